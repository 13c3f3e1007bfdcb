#include "vbp/builder/layout.hpp"

#include "vbp/errors.hpp"

#include <algorithm>

namespace vbp::builder {

using grid::Coord;
using grid::Rect;

std::string RegionLayout::targ_name() const { return "targ" + tag; }
std::string RegionLayout::inp_name() const { return "inp" + tag; }
std::string RegionLayout::w_name(int h) const { return "w_" + std::to_string(h) + tag; }

std::string RegionLayout::out_name(int h, int q) const
{
    return h == q ? "out" + tag : "out_" + std::to_string(h) + tag;
}

std::string RegionLayout::del_name(int h, int q) const
{
    return h == q ? "del" + tag : "del_" + std::to_string(h) + tag;
}

std::string RegionLayout::prev_name(int h, int q) const
{
    return h == 1 ? inp_name() : out_name(h - 1, q);
}

std::string Layout::eta_name(int h) const
{
    return eta.size() == 1 ? "eta" : "eta_" + std::to_string(h);
}

RegionLayout place_region(const NetworkSpec& spec, std::string tag, int header_row)
{
    const auto& t = spec.topology;
    const int q = spec.layers();
    RegionLayout r;
    r.tag = tag;
    r.header_row = header_row;
    const int top = header_row + 1;
    r.targ = Rect::of({top, 3}, t[q], 1);
    r.inp = Rect::of({top, 4}, t[0] + 1, 1);
    int col = 5;
    for (int h = 1; h <= q; ++h) {
        r.w.push_back(Rect::of({top, col}, t[h], t[h - 1] + 1));
        col += t[h - 1] + 1;
        r.out.push_back(Rect::of({top, col}, h < q ? t[h] + 1 : t[h], 1));
        ++col;
    }
    ++col;
    r.del.resize(static_cast<std::size_t>(q));
    for (int h = q; h >= 1; --h)
        r.del[static_cast<std::size_t>(h - 1)] = Rect::of({top, col++}, t[h], 1);
    return r;
}

Layout compute_layout(const NetworkSpec& spec, int samples)
{
    spec.validate();
    if (samples < 2)
        throw ValidationError("at least two training records are required");
    const auto& t = spec.topology;
    const int q = spec.layers();
    Layout L;
    L.samples = samples;
    L.inputs = spec.inputs();
    L.outputs = spec.outputs();
    L.layers = q;
    const int width = L.inputs + L.outputs;

    L.trdata = Rect::of({L.data_header_row + 1, L.index_col + 1}, samples, width);
    L.control_col = L.index_col + width + 3;
    L.counter = {L.data_header_row, L.control_col};
    L.itc = {L.data_header_row + 1, L.control_col};
    L.itcp1 = {L.data_header_row + 2, L.control_col};

    const int row_a = L.data_header_row + samples + 2;
    L.sample_a = Rect::of({row_a, L.index_col + 1}, 1, width);
    L.sample_b = Rect::of({row_a + 1, L.index_col + 1}, 1, width);
    const int eta_cells = spec.shared_eta() ? 1 : q;
    for (int h = 0; h < eta_cells; ++h)
        L.eta.push_back({row_a + h, L.control_col});
    L.ru = {row_a + std::max(3, eta_cells), L.control_col};

    int height = t[q];
    for (int h = 0; h < q; ++h)
        height = std::max(height, t[h] + 1);
    const int header_a = std::max(row_a + 1 + 5, L.ru.row + 2);
    L.a = place_region(spec, "A", header_a);
    const int header_b = header_a + height + 3;
    L.b = place_region(spec, "B", header_b);

    L.ema_header_row = header_b + height + 4;
    const int ema_col = L.b.del[static_cast<std::size_t>(q - 1)].top_left.col;
    L.ema_error = Rect::of({L.ema_header_row + 1, ema_col}, t[q], 1);
    L.ema = Rect::of({L.ema_header_row + 1, ema_col + 1}, t[q], 1);
    return L;
}

} // namespace vbp::builder
