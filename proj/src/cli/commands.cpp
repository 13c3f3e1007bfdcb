#include "vbp/cli/commands.hpp"

#include "vbp/builder/builder.hpp"
#include "vbp/builder/layout.hpp"
#include "vbp/builder/runs.hpp"
#include "vbp/errors.hpp"
#include "vbp/formula/format.hpp"
#include "vbp/grid/workbook_io.hpp"
#include "vbp/oracle/least_squares.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace vbp::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot write '" + path.string() + "'");
    f << text;
}

std::vector<std::uint64_t> seeds_of(const Options& opt, const RunConfig& cfg)
{
    return opt.seeds.empty() ? std::vector<std::uint64_t>{cfg.spec.seed} : opt.seeds;
}

builder::TrainingSet training_set(const PreparedData& d)
{
    return {d.in_scaled.columns, d.in_scaled.rows};
}

double mean_ema(const grid::Workbook& wb, const PreparedData& d)
{
    auto ema = builder::ema_values(wb);
    double s = 0.0;
    for (std::size_t k = 0; k < ema.size(); ++k)
        s += ema[k] / std::abs(d.target_alpha(static_cast<int>(k)));
    return s / static_cast<double>(ema.size());
}

PreparedData data_from_workbook(const grid::Workbook& wb)
{
    NetworkSpec spec = builder::spec_from_workbook(wb);
    PreparedData d;
    d.in_raw.input_count = spec.inputs();
    for (int j = 0; j < spec.inputs() + spec.outputs(); ++j)
        d.in_raw.columns.push_back("c" + std::to_string(j + 1));
    d.in_raw.rows = builder::training_records(wb);
    d.out_raw.columns = d.in_raw.columns;
    d.out_raw.input_count = d.in_raw.input_count;
    d.in_scaled = d.in_raw;
    d.out_scaled = d.out_raw;
    d.total_rows = d.in_raw.rows.size();
    return d;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string opt_num(const std::optional<double>& v)
{
    return v ? num(*v) : std::string();
}

} // namespace

RunConfig resolve_config(const Options& opt)
{
    RunConfig cfg = load_config(opt.config);
    if (!opt.data.empty())
        cfg.data = opt.data;
    if (opt.epochs)
        cfg.epochs = *opt.epochs;
    if (opt.split)
        cfg.split.in_count = *opt.split;
    if (opt.scaler) {
        if (*opt.scaler == "none")
            cfg.scaler.reset();
        else
            cfg.scaler = data::parse_scaler_kind(*opt.scaler);
    }
    if (!opt.seeds.empty())
        cfg.spec.seed = opt.seeds.front();
    if (cfg.epochs < 0)
        throw ValidationError("epochs must be non-negative");
    return cfg;
}

TrainOutcome train_seed(const NetworkSpec& spec_in, const PreparedData& data, std::uint64_t seed, int passes,
                        bool trace, const grid::Workbook* prebuilt)
{
    if (passes < 0)
        throw ValidationError("pass count must be non-negative");
    NetworkSpec spec = spec_in;
    spec.seed = seed;
    TrainOutcome r;
    r.seed = seed;
    if (prebuilt) {
        r.workbook = *prebuilt;
        r.workbook.set_rng_seed(seed);
    } else {
        r.workbook = builder::build_workbook(spec, training_set(data));
    }
    const int S = static_cast<int>(data.in_scaled.rows.size());
    std::ostringstream tr;
    std::ostream* tp = trace ? &tr : nullptr;
    if (trace)
        tr << "pass,cell,old,new\n";

    auto record = [&](int done) {
        EpochRow row;
        row.epoch = static_cast<double>(done) / S;
        r.weights = builder::extract_weights(r.workbook);
        row.in_err = average_abs_error(spec, r.weights, data, data.in_scaled);
        if (data.has_out_sample()) {
            row.out_err = average_abs_error(spec, r.weights, data, data.out_scaled);
            if (r.improvements.empty() || *row.out_err < r.improvements.back().out_err)
                r.improvements.push_back({row.epoch, *row.out_err, r.weights});
        }
        row.ema = mean_ema(r.workbook, data);
        r.report.rows.push_back(row);
    };

    builder::init_run(r.workbook, tp);
    record(0);
    int done = 0;
    while (done < passes) {
        const int step = std::min(S, passes - done);
        builder::train_run(r.workbook, step, tp, done);
        done += step;
        record(done);
    }
    r.trace = tr.str();
    return r;
}

int cmd_build(const Options& opt, std::ostream& out)
{
    RunConfig cfg = resolve_config(opt);
    PreparedData data = prepare_data(cfg);
    builder::TrainingSet ts = training_set(data);
    const std::string text = builder::build_directives(cfg.spec, ts);
    grid::Workbook wb;
    wb.add_sheet(builder::sheet_name);
    grid::apply_directives(wb, text);
    const fs::path path = opt.workbook.empty() ? opt.out_dir / "workbook.vbp" : opt.workbook;
    write_file(path, grid::save_workbook(wb));
    if (data.scaler)
        write_file(path.parent_path() / "scaler.csv", data::scaler_csv(*data.scaler));

    const builder::Layout L = builder::compute_layout(cfg.spec, static_cast<int>(ts.records.size()));
    out << "workbook," << path.string() << "\n";
    out << "topology," << format_topology(cfg.spec.topology) << "\n";
    out << "parameters," << cfg.spec.parameter_count() << "\n";
    out << "records," << data.total_rows << "," << data.rejected_rows << " rejected," << data.in_raw.rows.size()
        << " in-sample," << data.out_raw.rows.size() << " out-sample\n";
    for (const auto& n : wb.names())
        out << "name," << n.name << "," << grid::format_rect(n.rect) << "\n";
    out << "region,A," << L.a.header_row << "\n";
    out << "region,B," << L.b.header_row << "\n";
    out << "ema," << grid::format_rect(L.ema) << "\n";
    return 0;
}

int cmd_train(const Options& opt, std::ostream& out, bool crossval)
{
    std::optional<grid::Workbook> prebuilt;
    PreparedData data;
    NetworkSpec spec;
    int epochs = opt.epochs.value_or(0);
    std::vector<std::uint64_t> seeds = opt.seeds;
    if (!opt.workbook.empty())
        prebuilt = grid::load_workbook_file(opt.workbook);
    if (!opt.config.empty()) {
        RunConfig cfg = resolve_config(opt);
        data = prepare_data(cfg);
        spec = cfg.spec;
        epochs = cfg.epochs;
        seeds = seeds_of(opt, cfg);
    } else if (prebuilt) {
        data = data_from_workbook(*prebuilt);
        spec = builder::spec_from_workbook(*prebuilt);
        if (seeds.empty())
            seeds.push_back(prebuilt->settings().rng_seed);
    } else {
        throw ValidationError("train needs --config or --workbook");
    }
    if (prebuilt) {
        NetworkSpec wspec = builder::spec_from_workbook(*prebuilt);
        if (wspec.topology != spec.topology)
            throw ValidationError("workbook topology " + format_topology(wspec.topology) +
                                  " does not match the config's " + format_topology(spec.topology));
        spec = wspec;
    }
    if (crossval && !data.has_out_sample())
        throw ValidationError("crossval needs an out-sample set; set split in the config");
    const int S = static_cast<int>(data.in_scaled.rows.size());
    const int passes = opt.iterations ? *opt.iterations : epochs * S;

    std::vector<TrainOutcome> results(seeds.size());
    std::vector<double> seconds(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    auto work = [&](std::size_t i) {
        try {
            auto t0 = std::chrono::steady_clock::now();
            results[i] = train_seed(spec, data, seeds[i], passes, opt.trace, prebuilt ? &*prebuilt : nullptr);
            seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min<std::size_t>(opt.jobs, seeds.size()));
    for (std::size_t base = 0; base < seeds.size(); base += jobs) {
        std::vector<std::thread> pool;
        for (std::size_t i = base; i < std::min(seeds.size(), base + jobs); ++i)
            pool.emplace_back(work, i);
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    const bool multi = seeds.size() > 1;
    std::string summary = "seed,epochs,in_err,out_err,ema,best_epoch,best_out_err\n";
    std::vector<double> ins, outs, bests;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const TrainOutcome& r = results[i];
        const fs::path dir = multi ? opt.out_dir / ("seed-" + std::to_string(r.seed)) : opt.out_dir;
        write_file(dir / "report.csv", report_csv(r.report));
        write_file(dir / "weights.csv", weights_csv(r.weights));
        write_file(dir / "trained.vbp", grid::save_workbook(r.workbook));
        if (opt.trace)
            write_file(dir / "trace.csv", r.trace);
        if (data.scaler)
            write_file(dir / "scaler.csv", data::scaler_csv(*data.scaler));
        std::optional<BestWeights> best;
        if (!r.improvements.empty())
            best = r.improvements.back();
        if (crossval) {
            std::string keep = "epoch,out_err\n";
            for (const auto& b : r.improvements)
                keep += num(b.epoch) + "," + num(b.out_err) + "\n";
            write_file(dir / "best.csv", keep);
            write_file(dir / "best_weights.csv", weights_csv(best->weights));
        }
        const EpochRow& last = r.report.rows.back();
        summary += std::to_string(r.seed) + "," + num(last.epoch) + "," + num(last.in_err) + "," +
                   opt_num(last.out_err) + "," + num(last.ema) + "," + (best ? num(best->epoch) : "") + "," +
                   (best ? num(best->out_err) : "") + "\n";
        ins.push_back(last.in_err);
        if (last.out_err)
            outs.push_back(*last.out_err);
        if (best)
            bests.push_back(best->out_err);
        out << "seed " << r.seed << ": in_err " << num(last.in_err);
        if (last.out_err)
            out << " out_err " << num(*last.out_err);
        if (crossval && best)
            out << " best_out_err " << num(best->out_err) << " at epoch " << num(best->epoch);
        out << "\n";
        std::cerr << "seed " << r.seed << ": " << passes << " passes in " << seconds[i] << " s\n";
    }
    if (multi) {
        auto stat_row = [&](const char* label, double (*f)(std::vector<double>)) {
            summary += std::string(label) + ",," + num(f(ins)) + "," + (outs.empty() ? "" : num(f(outs))) + ",,," +
                       (bests.empty() ? "" : num(f(bests))) + "\n";
        };
        stat_row("min", [](std::vector<double> v) { return *std::min_element(v.begin(), v.end()); });
        stat_row("median", median);
        stat_row("max", [](std::vector<double> v) { return *std::max_element(v.begin(), v.end()); });
        out << "median in_err " << num(median(ins));
        if (!outs.empty())
            out << " median out_err " << num(median(outs));
        if (!bests.empty())
            out << " median best_out_err " << num(median(bests));
        out << "\n";
    }
    write_file(opt.out_dir / "summary.csv", summary);
    return 0;
}

int cmd_regress(const Options& opt, std::ostream& out)
{
    RunConfig cfg = resolve_config(opt);
    PreparedData data = prepare_data(cfg);
    const int n = cfg.spec.inputs();
    const int m = cfg.spec.outputs();
    auto design = [&](const data::NumericTable& t) {
        oracle::Matrix x(static_cast<std::size_t>(n + 1), t.rows.size());
        oracle::Matrix y(static_cast<std::size_t>(m), t.rows.size());
        for (std::size_t s = 0; s < t.rows.size(); ++s) {
            for (int j = 0; j < n; ++j)
                x(static_cast<std::size_t>(j), s) = t.rows[s][static_cast<std::size_t>(j)];
            x(static_cast<std::size_t>(n), s) = 1.0;
            for (int k = 0; k < m; ++k)
                y(static_cast<std::size_t>(k), s) = t.rows[s][static_cast<std::size_t>(n + k)];
        }
        return std::pair{x, y};
    };
    auto [x, y] = design(data.in_scaled);
    oracle::ReducedFit fit = oracle::least_squares_reduced(x, y);

    auto errors = [&](const data::NumericTable& t, double& avg, std::vector<double>& sse) {
        auto [xs, ys] = design(t);
        oracle::Matrix pred = oracle::multiply(fit.w, xs);
        double sum = 0.0;
        sse.assign(static_cast<std::size_t>(m), 0.0);
        for (int k = 0; k < m; ++k)
            for (std::size_t s = 0; s < t.rows.size(); ++s) {
                const double e = (ys(static_cast<std::size_t>(k), s) - pred(static_cast<std::size_t>(k), s)) /
                                 std::abs(data.target_alpha(k));
                sum += std::abs(e);
                sse[static_cast<std::size_t>(k)] += e * e;
            }
        avg = sum / static_cast<double>(t.rows.size() * static_cast<std::size_t>(m));
    };

    std::string text = "target,column,weight\n";
    for (int k = 0; k < m; ++k)
        for (int j = 0; j <= n; ++j)
            text += data.in_raw.columns[static_cast<std::size_t>(n + k)] + "," +
                    (j < n ? data.in_raw.columns[static_cast<std::size_t>(j)] : std::string("bias")) + "," +
                    num(fit.w(static_cast<std::size_t>(k), static_cast<std::size_t>(j))) + "\n";
    std::string dropped;
    for (int j = 0; j <= n; ++j)
        if (!fit.kept[static_cast<std::size_t>(j)])
            dropped += (dropped.empty() ? "" : ";") +
                       (j < n ? data.in_raw.columns[static_cast<std::size_t>(j)] : std::string("bias"));
    double in_avg = 0.0;
    std::vector<double> in_sse;
    errors(data.in_scaled, in_avg, in_sse);
    std::string stats = "metric,value\n";
    stats += "in_rows," + std::to_string(data.in_raw.rows.size()) + "\n";
    stats += "out_rows," + std::to_string(data.out_raw.rows.size()) + "\n";
    stats += "dropped_collinear," + dropped + "\n";
    stats += "in_err," + num(in_avg) + "\n";
    for (int k = 0; k < m; ++k)
        stats += "in_sse_" + data.in_raw.columns[static_cast<std::size_t>(n + k)] + "," +
                 num(in_sse[static_cast<std::size_t>(k)]) + "\n";
    if (data.has_out_sample()) {
        double out_avg = 0.0;
        std::vector<double> out_sse;
        errors(data.out_scaled, out_avg, out_sse);
        stats += "out_err," + num(out_avg) + "\n";
    }
    write_file(opt.out_dir / "regression_weights.csv", text);
    write_file(opt.out_dir / "regression.csv", stats);
    out << text << stats;
    return 0;
}

int cmd_dump(const Options& opt, std::ostream& out)
{
    if (opt.workbook.empty())
        throw ValidationError("dump needs --workbook");
    if (opt.name.empty())
        throw ValidationError("dump needs a name or range");
    grid::Workbook wb = grid::load_workbook_file(opt.workbook);
    int sheet = 0;
    grid::Rect rect;
    if (wb.name_id(opt.name) >= 0) {
        const auto& nr = wb.resolve(opt.name);
        sheet = nr.sheet;
        rect = nr.rect;
    } else {
        grid::RangeAddr r;
        try {
            r = grid::parse_range(opt.name);
        } catch (const ParseError&) {
            throw ValidationError("unknown name '" + opt.name + "'");
        }
        sheet = r.sheet.empty() ? 0 : wb.sheet_index(r.sheet);
        if (sheet < 0)
            throw ValidationError("unknown sheet '" + r.sheet + "'");
        rect = r.rect;
    }
    for (int i = rect.top_left.row; i <= rect.bottom_right.row; ++i) {
        for (int j = rect.top_left.col; j <= rect.bottom_right.col; ++j) {
            if (j > rect.top_left.col)
                out << '\t';
            const grid::Coord c{i, j};
            const int g = wb.group_at(sheet, c);
            if (opt.formulas && g >= 0)
                out << '=' << formula::format_formula(*wb.group(g).ast);
            else
                out << to_display(wb.value(sheet, c));
        }
        out << '\n';
    }
    return 0;
}

} // namespace vbp::cli
