#include "vbp/cli/commands.hpp"
#include "vbp/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using vbp::cli::Options;
    CLI::App app{"vbp: two-region spreadsheet backpropagation"};
    app.require_subcommand(1);
    Options opt;
    std::string seeds;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "key=value run configuration");
        sub->add_option("--workbook", opt.workbook, "workbook file");
        sub->add_option("--out-dir", opt.out_dir, "directory for output files")->capture_default_str();
        sub->add_option("--data", opt.data, "dataset CSV (overrides the config)");
        sub->add_option("--split", opt.split, "in-sample record count (0 = all)");
        sub->add_option("--scaler", opt.scaler, "zscore, range or none")
            ->check(CLI::IsMember({"zscore", "range", "none"}));
    };
    auto training = [&](CLI::App* sub) {
        common(sub);
        sub->add_option("--seed", seeds, "PRNG seed");
        sub->add_option("--seeds", seeds, "comma-separated seeds for a multi-seed run");
        sub->add_option("--epochs", opt.epochs, "training epochs (S passes each)");
        sub->add_option("--iterations", opt.iterations, "training passes; overrides --epochs");
        sub->add_flag("--trace", opt.trace, "write per-cell changes to trace.csv");
        sub->add_option("--jobs", opt.jobs, "seeds trained concurrently")->check(CLI::PositiveNumber);
    };

    auto* build = app.add_subcommand("build", "build a training workbook from a config");
    common(build);
    build->add_option("--seed", seeds, "PRNG seed");
    auto* train = app.add_subcommand("train", "initialise and train, writing an error curve");
    training(train);
    auto* crossval = app.add_subcommand("crossval", "train with keep-best on out-sample error");
    training(crossval);
    auto* regress = app.add_subcommand("regress", "least-squares linear baseline");
    common(regress);
    auto* dump = app.add_subcommand("dump", "print values or formulas of a named range");
    common(dump);
    dump->add_option("name", opt.name, "name or range, e.g. w_1A or VBP!E18:G19")->required();
    dump->add_flag("--formulas", opt.formulas, "show formulas instead of values");
    auto* selftest = app.add_subcommand("selftest", "run the built-in fixture checks");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& s : vbp::cli::split_list(seeds)) {
            std::size_t used = 0;
            unsigned long long v = std::stoull(s, &used);
            if (used != s.size())
                throw vbp::ValidationError("malformed seed '" + s + "'");
            opt.seeds.push_back(v);
        }
        if (build->parsed()) {
            if (opt.config.empty())
                throw vbp::ValidationError("build needs --config");
            return vbp::cli::cmd_build(opt, std::cout);
        }
        if (train->parsed())
            return vbp::cli::cmd_train(opt, std::cout, false);
        if (crossval->parsed())
            return vbp::cli::cmd_train(opt, std::cout, true);
        if (regress->parsed()) {
            if (opt.config.empty())
                throw vbp::ValidationError("regress needs --config");
            return vbp::cli::cmd_regress(opt, std::cout);
        }
        if (dump->parsed())
            return vbp::cli::cmd_dump(opt, std::cout);
        if (selftest->parsed())
            return vbp::cli::cmd_selftest(opt, std::cout);
    } catch (const vbp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: malformed number in seed list\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vbp::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
