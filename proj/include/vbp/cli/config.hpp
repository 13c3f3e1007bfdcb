#pragma once

#include "vbp/data/dataset.hpp"
#include "vbp/data/scaler.hpp"
#include "vbp/network_spec.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vbp::cli {

/// Everything a run needs, read from a flat key=value file:
///
///   topology = 9-50-30-1
///   activations = relu,relu,identity   (one name applies to every layer)
///   eta = 0.001                        (one value or one per layer)
///   seed = 1
///   sampling = sequential | shuffled | random
///   stride = 179                       (shuffled only; 0 = automatic)
///   pair_offset = 1
///   init = uniform01 | symmetric
///   epochs = 100
///   data = ../data/auto-mpg.csv        (relative to the config file)
///   inputs = cylinders,displacement,...
///   targets = mpg
///   split = 360                        (0 = every valid row is in-sample)
///   split_order = file | shuffled
///   split_seed = 0
///   scaler = zscore | range | none
struct RunConfig {
    NetworkSpec spec;
    int epochs = 0;
    std::filesystem::path data;
    std::vector<std::string> inputs;
    std::vector<std::string> targets;
    data::SplitSpec split;
    std::optional<data::ScalerKind> scaler = data::ScalerKind::zscore;
};

/// Errors carry "<source>:<line>:" prefixes.
RunConfig parse_config(std::string_view text, const std::string& source, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

std::vector<std::string> split_list(std::string_view text);

} // namespace vbp::cli
