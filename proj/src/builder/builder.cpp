#include "vbp/builder/builder.hpp"

#include "vbp/builder/generators.hpp"
#include "vbp/errors.hpp"
#include "vbp/grid/workbook_io.hpp"

#include <sstream>

namespace vbp::builder {

using grid::Coord;
using grid::Rect;

namespace {

class Emitter {
public:
    explicit Emitter(std::string sheet) : sheet_(std::move(sheet)) {}

    void option(const std::string& key, const std::string& value) { out_ << "OPTION " << key << ' ' << value << '\n'; }
    void meta(const std::string& key, const std::string& value) { out_ << "META " << key << ' ' << value << '\n'; }
    void name(const std::string& n, const Rect& r) { out_ << "NAME " << n << ' ' << ref(r) << '\n'; }
    void set(Coord c, double v) { out_ << "SET " << ref(Rect::single(c)) << ' ' << format_number(v) << '\n'; }
    void label(Coord c, const std::string& text)
    {
        out_ << "SET " << ref(Rect::single(c)) << ' ' << grid::format_literal(Scalar::text(text)) << '\n';
    }
    void cell(Coord c, const std::string& formula) { out_ << "CELL " << ref(Rect::single(c)) << " =" << formula << '\n'; }
    void array(const Rect& r, const std::string& formula) { out_ << "ARRAY " << ref(r) << " =" << formula << '\n'; }
    void comment(const std::string& text) { out_ << "# " << text << '\n'; }

    std::string str() const { return out_.str(); }

private:
    std::string ref(const Rect& r) const { return sheet_ + "!" + grid::format_rect(r); }

    std::string sheet_;
    std::ostringstream out_;
};

std::string rect_text(const Rect& r) { return grid::format_rect(r); }

std::string join_eta(const NetworkSpec& spec)
{
    std::string s;
    for (std::size_t i = 0; i < spec.eta.size(); ++i)
        s += (i ? "," : "") + format_number(spec.eta[i]);
    return s;
}

std::string join_activations(const NetworkSpec& spec)
{
    std::string s;
    for (std::size_t i = 0; i < spec.activations.size(); ++i)
        s += (i ? "," : "") + std::string(activation_name(spec.activations[i]));
    return s;
}

void check_data(const NetworkSpec& spec, const TrainingSet& data)
{
    spec.validate();
    const std::size_t width = static_cast<std::size_t>(spec.inputs() + spec.outputs());
    if (data.records.size() < 2)
        throw ValidationError("at least two training records are required");
    for (std::size_t i = 0; i < data.records.size(); ++i)
        if (data.records[i].size() != width)
            throw ValidationError("record " + std::to_string(i) + " has " + std::to_string(data.records[i].size()) +
                                  " values; topology " + format_topology(spec.topology) + " needs " +
                                  std::to_string(width));
    if (!data.columns.empty() && data.columns.size() != width)
        throw ValidationError("column label count does not match the topology");
}

std::string column_label(const NetworkSpec& spec, const TrainingSet& data, int j)
{
    if (!data.columns.empty())
        return data.columns[static_cast<std::size_t>(j)];
    if (j < spec.inputs())
        return "inp" + std::to_string(j + 1);
    return "targ" + std::to_string(j - spec.inputs() + 1);
}

// Data block with a 0-based index column on its left.
void emit_data_block(Emitter& e, const NetworkSpec& spec, const TrainingSet& data, const Rect& block,
                     const std::string& title)
{
    const int header = block.top_left.row - 1;
    const int index_col = block.top_left.col - 1;
    e.label({header, index_col}, title);
    for (int j = 0; j < block.cols(); ++j)
        e.label({header, block.top_left.col + j}, column_label(spec, data, j));
    for (int i = 0; i < block.rows(); ++i) {
        e.set({block.top_left.row + i, index_col}, i);
        for (int j = 0; j < block.cols(); ++j)
            e.set({block.top_left.row + i, block.top_left.col + j},
                  data.records[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
}

void emit_region_labels(Emitter& e, const RegionLayout& r, int q)
{
    const int hr = r.header_row;
    e.label({hr, r.targ.top_left.col}, "targ");
    e.label({hr, r.inp.top_left.col}, "inp");
    for (int h = 1; h <= q; ++h) {
        e.label({hr, r.w[static_cast<std::size_t>(h - 1)].top_left.col}, "w_" + std::to_string(h));
        e.label({hr, r.out[static_cast<std::size_t>(h - 1)].top_left.col},
                h == q ? std::string("out") : "out_" + std::to_string(h));
    }
    for (int h = q; h >= 1 && !r.del.empty(); --h)
        e.label({hr, r.del[static_cast<std::size_t>(h - 1)].top_left.col},
                h == q ? std::string("del") : "del_" + std::to_string(h));
}

void emit_region_names(Emitter& e, const RegionLayout& r, int q)
{
    e.name(r.targ_name(), r.targ);
    e.name(r.inp_name(), r.inp);
    for (int h = 1; h <= q; ++h) {
        e.name(r.w_name(h), r.w[static_cast<std::size_t>(h - 1)]);
        e.name(r.out_name(h, q), r.out[static_cast<std::size_t>(h - 1)]);
    }
    for (int h = q; h >= 1 && !r.del.empty(); --h)
        e.name(r.del_name(h, q), r.del[static_cast<std::size_t>(h - 1)]);
}

Rect inputs_of(const Rect& sample_row, int n)
{
    return Rect::of(sample_row.top_left, 1, n);
}

Rect targets_of(const Rect& sample_row, int n, int m)
{
    return Rect::of({sample_row.top_left.row, sample_row.top_left.col + n}, 1, m);
}

void emit_selection(Emitter& e, const RegionLayout& r, const Rect& sample_row, int n, int m)
{
    e.array(r.targ, "TRANSPOSE(" + rect_text(targets_of(sample_row, n, m)) + ")");
    e.array(Rect::of(r.inp.top_left, n, 1), "TRANSPOSE(" + rect_text(inputs_of(sample_row, n)) + ")");
    e.set(r.inp.bottom_right, 1);
}

Rect without_bias(const Rect& out, int h, int q)
{
    return h < q ? Rect{out.top_left, {out.bottom_right.row - 1, out.bottom_right.col}} : out;
}

void emit_output(Emitter& e, const NetworkSpec& spec, const RegionLayout& r, int h)
{
    const int q = spec.layers();
    const Rect& out = r.out[static_cast<std::size_t>(h - 1)];
    const std::string z = "MMULT(" + r.w_name(h) + "," + r.prev_name(h, q) + ")";
    e.array(without_bias(out, h, q), activation_formula(spec.activations[static_cast<std::size_t>(h - 1)], z));
    if (h < q)
        e.set(out.bottom_right, 1);
}

void emit_deltas(Emitter& e, const NetworkSpec& spec, const RegionLayout& r)
{
    const int q = spec.layers();
    for (int h = q; h >= 1; --h) {
        const std::string out = r.out_name(h, q);
        const std::string factor = derivative_formula(spec.activations[static_cast<std::size_t>(h - 1)], out);
        std::string base = h == q ? "(" + r.targ_name() + "-" + out + ")"
                                  : "MMULT(TRANSPOSE(" + r.w_name(h + 1) + ")," + r.del_name(h + 1, q) + ")";
        std::string formula;
        if (factor.empty())
            formula = h == q ? r.targ_name() + "-" + out : base;
        else
            formula = base + "*" + factor;
        e.array(r.del[static_cast<std::size_t>(h - 1)], formula);
    }
}

std::string update_formula(const Layout& L, const RegionLayout& from, int h)
{
    const int q = L.layers;
    return from.w_name(h) + "+" + L.eta_name(h) + "*(TRANSPOSE(" + from.prev_name(h, q) + ")*" + from.del_name(h, q) +
           ")";
}

std::string itc_formula(const NetworkSpec& spec, int samples)
{
    const std::string s = std::to_string(samples);
    switch (spec.sampling) {
    case Sampling::sequential: return "MOD(itc+1," + s + ")";
    case Sampling::shuffled: {
        int stride = spec.stride > 0 ? spec.stride : auto_stride(samples);
        return "MOD(itc+" + std::to_string(stride) + "," + s + ")";
    }
    case Sampling::random: return "MOD(itc+RANDBETWEEN(0," + std::to_string(samples - 1) + ")," + s + ")";
    }
    return {};
}

} // namespace

std::string activation_formula(Activation f, const std::string& z)
{
    switch (f) {
    case Activation::tanh: return "TANH(" + z + ")";
    case Activation::logistic: return "1/(1+EXP(-" + z + "))";
    case Activation::identity: return z;
    case Activation::relu: return "IF(" + z + ">0," + z + ",0)";
    }
    return z;
}

std::string derivative_formula(Activation f, const std::string& out)
{
    switch (f) {
    case Activation::tanh: return "(1-" + out + "^2)";
    case Activation::logistic: return "(" + out + "*(1-" + out + "))";
    case Activation::identity: return {};
    case Activation::relu: return "IF(" + out + ">0,1,0)";
    }
    return {};
}

std::string build_directives(const NetworkSpec& spec, const TrainingSet& data)
{
    check_data(spec, data);
    const int S = static_cast<int>(data.records.size());
    const Layout L = compute_layout(spec, S);
    const int n = L.inputs;
    const int m = L.outputs;
    const int q = L.layers;
    Emitter e(sheet_name);

    e.option("rng_seed", std::to_string(spec.seed));
    e.option("max_iterations", "1");
    e.meta("topology", format_topology(spec.topology));
    e.meta("activations", join_activations(spec));
    e.meta("eta", join_eta(spec));
    e.meta("sampling", std::string(sampling_name(spec.sampling)));
    if (spec.sampling == Sampling::shuffled)
        e.meta("stride", std::to_string(spec.stride > 0 ? spec.stride : auto_stride(S)));
    e.meta("pair_offset", std::to_string(spec.pair_offset));
    e.meta("init", std::string(init_name(spec.init)));
    e.meta("samples", std::to_string(S));

    emit_data_block(e, spec, data, L.trdata, "TrData");

    e.name("TrData", L.trdata);
    e.name("itc", Rect::single(L.itc));
    e.name("itcp1", Rect::single(L.itcp1));
    for (int h = 1; h <= static_cast<int>(L.eta.size()); ++h)
        e.name(L.eta_name(h), Rect::single(L.eta[static_cast<std::size_t>(h - 1)]));
    e.name("ru", Rect::single(L.ru));
    emit_region_names(e, L.a, q);
    emit_region_names(e, L.b, q);

    const int label_col = L.control_col - 1;
    e.label({L.itc.row, label_col}, "itc");
    e.label({L.itcp1.row, label_col}, "itcp1");
    for (int h = 1; h <= static_cast<int>(L.eta.size()); ++h) {
        Coord c = L.eta[static_cast<std::size_t>(h - 1)];
        e.label({c.row, label_col}, L.eta_name(h));
        e.set(c, spec.eta[static_cast<std::size_t>(h - 1)]);
    }
    e.label({L.ru.row, label_col}, "ru");
    e.set(L.ru, 1);

    e.cell(L.counter, grid::format_coord(L.counter) + "+1");
    e.cell(L.itc, itc_formula(spec, S));
    e.cell(L.itcp1, "MOD(itc+" + std::to_string(spec.pair_offset) + "," + std::to_string(S) + ")");

    e.label({L.sample_a.top_left.row, L.index_col}, "sample A");
    e.array(L.sample_a, "OFFSET(TrData,itc,)");
    e.label({L.sample_b.top_left.row, L.index_col}, "sample B");
    e.array(L.sample_b, "OFFSET(TrData,itcp1,)");

    const std::string random = spec.init == RandomInit::symmetric ? "2*RAND()-1" : "RAND()";

    e.comment("Region A");
    e.label({L.a.header_row - 1, L.a.targ.top_left.col}, "Region A");
    emit_region_labels(e, L.a, q);
    emit_selection(e, L.a, L.sample_a, n, m);
    for (int h = 1; h <= q; ++h) {
        e.array(L.a.w[static_cast<std::size_t>(h - 1)], "IF(ru=0," + random + "," + update_formula(L, L.b, h) + ")");
        emit_output(e, spec, L.a, h);
    }
    emit_deltas(e, spec, L.a);

    e.comment("Region B");
    e.label({L.b.header_row - 1, L.b.targ.top_left.col}, "Region B");
    emit_region_labels(e, L.b, q);
    emit_selection(e, L.b, L.sample_b, n, m);
    for (int h = 1; h <= q; ++h) {
        e.array(L.b.w[static_cast<std::size_t>(h - 1)], update_formula(L, L.a, h));
        emit_output(e, spec, L.b, h);
    }
    emit_deltas(e, spec, L.b);

    e.comment("EMA of absolute error");
    e.label({L.ema_header_row, L.ema_error.top_left.col}, "|targ-out|");
    e.label({L.ema_header_row, L.ema.top_left.col}, "EMA");
    e.array(L.ema_error, "ABS(" + L.b.targ_name() + "-" + L.b.out_name(q, q) + ")");
    e.array(L.ema, ema_formula(L.ema_error, L.ema, S).substr(1));
    return e.str();
}

grid::Workbook build_workbook(const NetworkSpec& spec, const TrainingSet& data)
{
    grid::Workbook wb;
    wb.add_sheet(sheet_name);
    grid::apply_directives(wb, build_directives(spec, data));
    return wb;
}

ForwardLayout forward_layout(const NetworkSpec& spec, int samples)
{
    ForwardLayout f;
    const int width = spec.inputs() + spec.outputs();
    f.samples = Rect::of({6, 5}, samples, width);
    const int row = 6 + samples + 1;
    f.driver = {row, 4};
    f.sample_row = Rect::of({row, 5}, 1, width);
    f.region = place_region(spec, "", row + 5);
    int height = spec.outputs();
    for (int h = 0; h < spec.layers(); ++h)
        height = std::max(height, spec.topology[static_cast<std::size_t>(h)] + 1);
    f.next_free_row = f.region.header_row + height + 3;
    return f;
}

std::string forward_directives(const NetworkSpec& spec, const std::vector<std::vector<std::vector<double>>>& weights,
                               const TrainingSet& data)
{
    check_data(spec, data);
    const int q = spec.layers();
    if (static_cast<int>(weights.size()) != q)
        throw ValidationError("expected " + std::to_string(q) + " weight matrices");
    const int S = static_cast<int>(data.records.size());
    const ForwardLayout F = forward_layout(spec, S);
    const int n = spec.inputs();
    const int m = spec.outputs();
    Emitter e(sheet_name);

    e.option("max_iterations", "1");
    e.meta("topology", format_topology(spec.topology));
    e.meta("activations", join_activations(spec));
    emit_data_block(e, spec, data, F.samples, "Samples");
    e.name("Samples", F.samples);
    RegionLayout r = F.region;
    r.del.clear();
    emit_region_names(e, r, q);

    e.label({F.driver.row, F.driver.col - 1}, "Sample#");
    e.cell(F.driver, "MOD(" + grid::format_coord(F.driver) + "+1," + std::to_string(S) + ")");
    e.array(F.sample_row, "OFFSET(Samples," + grid::format_coord(F.driver) + ",)");

    emit_region_labels(e, r, q);
    emit_selection(e, r, F.sample_row, n, m);
    for (int h = 1; h <= q; ++h) {
        const Rect& w = r.w[static_cast<std::size_t>(h - 1)];
        const auto& wm = weights[static_cast<std::size_t>(h - 1)];
        if (static_cast<int>(wm.size()) != w.rows())
            throw ValidationError("weight matrix " + std::to_string(h) + " has the wrong row count");
        for (int i = 0; i < w.rows(); ++i) {
            if (static_cast<int>(wm[static_cast<std::size_t>(i)].size()) != w.cols())
                throw ValidationError("weight matrix " + std::to_string(h) + " has the wrong column count");
            for (int j = 0; j < w.cols(); ++j)
                e.set({w.top_left.row + i, w.top_left.col + j},
                      wm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        emit_output(e, spec, r, h);
    }
    return e.str();
}

} // namespace vbp::builder
