#pragma once

#include "vbp/cli/config.hpp"
#include "vbp/cli/report.hpp"
#include "vbp/grid/workbook.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vbp::cli {

struct Options {
    std::filesystem::path config;
    std::filesystem::path workbook;
    std::filesystem::path out_dir = "out";
    std::filesystem::path data;
    std::vector<std::uint64_t> seeds;
    std::optional<int> epochs;
    std::optional<int> iterations;
    std::optional<int> split;
    std::optional<std::string> scaler;
    bool trace = false;
    int jobs = 1;
    std::string name;     // dump target
    bool formulas = false; // dump view
};

/// The config file with command-line overrides applied.
RunConfig resolve_config(const Options& opt);

struct TrainOutcome {
    std::uint64_t seed = 0;
    RunReport report;
    std::vector<BestWeights> improvements; // keep-best snapshots in order
    std::vector<oracle::Matrix> weights;   // Region B after the last pass
    grid::Workbook workbook;
    std::string trace;
};

/// Builds (or copies `prebuilt`), runs init, then trains for `passes`
/// passes, evaluating after every S passes and after the last one.
TrainOutcome train_seed(const NetworkSpec& spec, const PreparedData& data, std::uint64_t seed, int passes,
                        bool trace, const grid::Workbook* prebuilt = nullptr);

int cmd_build(const Options& opt, std::ostream& out);
int cmd_train(const Options& opt, std::ostream& out, bool crossval);
int cmd_regress(const Options& opt, std::ostream& out);
int cmd_dump(const Options& opt, std::ostream& out);
int cmd_selftest(const Options& opt, std::ostream& out);

} // namespace vbp::cli
