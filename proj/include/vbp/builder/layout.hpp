#pragma once

#include "vbp/grid/address.hpp"
#include "vbp/network_spec.hpp"

#include <string>
#include <vector>

namespace vbp::builder {

/// Cell blocks of one training region. Vectors are indexed by h-1.
struct RegionLayout {
    std::string tag = "A";
    int header_row = 0;
    grid::Rect targ;               // m_q x 1
    grid::Rect inp;                // (n+1) x 1, bias last
    std::vector<grid::Rect> w;     // m_h x (m_{h-1}+1)
    std::vector<grid::Rect> out;   // (m_h+1) x 1 for h<q, m_q x 1 for h=q
    std::vector<grid::Rect> del;   // m_h x 1

    std::string targ_name() const;
    std::string inp_name() const;
    std::string w_name(int h) const;
    std::string out_name(int h, int q) const;
    std::string del_name(int h, int q) const;
    /// Name of the layer-h input: inp for h = 1, out_{h-1} otherwise.
    std::string prev_name(int h, int q) const;
};

struct Layout {
    int samples = 0;
    int inputs = 0;
    int outputs = 0;
    int layers = 0;

    int data_header_row = 5;
    int index_col = 4;
    grid::Rect trdata;     // S x (n + m_q)
    int control_col = 0;
    grid::Coord counter;
    grid::Coord itc;
    grid::Coord itcp1;
    grid::Rect sample_a;   // 1 x (n + m_q)
    grid::Rect sample_b;
    std::vector<grid::Coord> eta; // one cell, or one per layer
    grid::Coord ru;

    RegionLayout a;
    RegionLayout b;

    int ema_header_row = 0;
    grid::Rect ema_error;  // m_q x 1
    grid::Rect ema;        // m_q x 1

    std::string eta_name(int h) const;
};

/// Places one region's blocks below `header_row`: targ in column C, inp in
/// D, then w_h/out_h pairs, a spacer column and the deltas.
RegionLayout place_region(const NetworkSpec& spec, std::string tag, int header_row);

/// Deterministic placement of every block for `spec` over S records.
/// Region A sits above Region B; within a region weights and outputs
/// alternate left to right by layer, followed by a spacer column and the
/// delta blocks from the output layer down to layer 1.
Layout compute_layout(const NetworkSpec& spec, int samples);

} // namespace vbp::builder
