#include "locrad_cli/cli.hpp"

#include "locrad/concentration.hpp"
#include "locrad/concept_class.hpp"
#include "locrad/csv.hpp"
#include "locrad/distribution.hpp"
#include "locrad/entropy.hpp"
#include "locrad/error.hpp"
#include "locrad/experiments.hpp"
#include "locrad/rademacher.hpp"
#include "locrad/report_io.hpp"
#include "locrad/restriction.hpp"
#include "locrad/rng.hpp"
#include "locrad/sample.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

namespace locrad::cli {

namespace {

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw UsageError("bad number for " + key + ": '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw UsageError("bad integer for " + key + ": '" + text + "'");
    return v;
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
    try {
        return parse_real_list(text);
    } catch (const Error&) {
        throw UsageError("bad number list for " + key + ": '" + text + "'");
    }
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
    return s;
}

// Typed access to the merged settings. Every read records the resolved
// value so that outputs echo defaults as well as given keys.
class Settings {
public:
    Settings(const ParsedArgs& args) : cmd_(args.command), values_(args.values) {}

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::optional<std::string> text(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        record(key, it->second);
        return it->second;
    }
    std::string text(const std::string& key, const std::string& def) {
        const auto v = values_.count(key) ? values_.at(key) : def;
        record(key, v);
        return v;
    }
    std::string required(const std::string& key) {
        if (!has(key)) throw UsageError(cmd_ + " needs --" + key);
        return *text(key);
    }

    std::optional<double> real(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const double v = parse_real(key, values_.at(key));
        record(key, format_real(v));
        return v;
    }
    double real(const std::string& key, double def) { return has(key) ? *real(key) : note(key, def); }

    std::optional<std::uint64_t> count(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const auto v = parse_count(key, values_.at(key));
        record(key, std::to_string(v));
        return v;
    }
    std::uint64_t count(const std::string& key, std::uint64_t def) {
        if (has(key)) return *count(key);
        record(key, std::to_string(def));
        return def;
    }

    std::vector<double> reals(const std::string& key) {
        const auto v = parse_reals(key, required(key));
        record(key, join(v));
        return v;
    }

    bool flag(const std::string& key, bool def) {
        const std::string v = text(key, def ? "true" : "false");
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw UsageError("expected true or false for " + key);
    }

    void record(const std::string& key, const std::string& value) {
        if (key == "output" || key == "format" || key == "summary") return;
        resolved_[key] = value;
    }

    Provenance provenance() const {
        Provenance p{{"command", cmd_}};
        for (const auto& key : command_keys(cmd_)) {
            const auto it = resolved_.find(key);
            if (it != resolved_.end()) p.emplace_back(key, it->second);
        }
        return p;
    }

private:
    double note(const std::string& key, double v) {
        record(key, format_real(v));
        return v;
    }

    std::string cmd_;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> resolved_;
};

enum class Format { csv, json };

Format output_format(Settings& s) {
    const std::string f = s.text("format", "csv");
    if (f == "csv") return Format::csv;
    if (f == "json") return Format::json;
    throw UsageError("format must be csv or json");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    f.close();
    if (!f) throw IoError("failed writing " + path);
}

// Writes to --output when given, else to `out`.
void emit(Settings& s, std::ostream& out, const std::string& content) {
    if (const auto path = s.text("output")) {
        write_file(*path, content);
    } else {
        out << content;
    }
}

DistributionSpec parse_dist(Settings& s, std::size_t dim = 1) {
    const std::string spec = s.text("dist", "uniform");
    const std::optional<double> bound = s.real("density_bound");
    if (spec == "uniform") return DistributionSpec::uniform(dim);
    const std::string prefix = "piecewise:";
    if (spec.rfind(prefix, 0) == 0) {
        if (dim != 1) throw UsageError("piecewise densities are one-dimensional");
        const std::string body = spec.substr(prefix.size());
        const auto semi = body.find(';');
        if (semi == std::string::npos) throw UsageError("dist piecewise:<breaks>;<densities>");
        return DistributionSpec::piecewise(parse_reals("dist", body.substr(0, semi)),
                                           parse_reals("dist", body.substr(semi + 1)), bound);
    }
    throw UsageError("dist must be uniform or piecewise:<breaks>;<densities>");
}

Interval parse_interval_target(Settings& s) {
    const std::string t = s.text("target", "none");
    if (t == "none") return Interval::none();
    const auto v = parse_reals("target", t);
    if (v.size() != 2) throw UsageError("interval target is none or lo,hi");
    return Interval::closed(v[0], v[1]);
}

Box parse_box_target(Settings& s, std::size_t dim) {
    const std::string t = s.text("target", "none");
    if (t == "none") return Box::none(dim);
    const auto v = parse_reals("target", t);
    if (v.size() != 2 * dim) throw UsageError("box target is none or lo1,hi1,...,lod,hid");
    Box b;
    for (std::size_t k = 0; k < dim; ++k) b.sides.push_back(Interval::closed(v[2 * k], v[2 * k + 1]));
    return b;
}

struct Constants {
    ConstantsMode mode = ConstantsMode::safe;
    ConstantTriple custom{};
};

Constants parse_constants(Settings& s, const std::string& def) {
    Constants c;
    const std::string m = s.text("constants", def);
    if (m == "safe") {
        c.mode = ConstantsMode::safe;
    } else if (m == "unit") {
        c.mode = ConstantsMode::unit;
    } else if (m == "custom") {
        c.mode = ConstantsMode::custom;
        const auto v = s.reals("custom");
        if (v.size() != 3) throw UsageError("custom constants are K1,K2,K3");
        c.custom = {v[0], v[1], v[2]};
    } else {
        throw UsageError("constants must be safe, unit or custom");
    }
    return c;
}

std::optional<int> parse_iterations(Settings& s) {
    const auto it = s.count("iterations");
    if (!it) return std::nullopt;
    if (*it > 1000) throw UsageError("iterations must be <= 1000");
    return static_cast<int>(*it);
}

Sample read_sample_file(const std::string& path) {
    const auto table = read_numeric_csv(path);
    if (table.rows.empty()) throw IoError("sample file has no rows: " + path);
    return Sample::from_points(table.rows);
}

std::vector<double> read_labels_file(const std::string& path) {
    std::vector<double> y;
    for (const auto& row : read_numeric_csv(path).rows) y.insert(y.end(), row.begin(), row.end());
    return y;
}

// Sample from --sample, else n points drawn from dist under the seed's
// sample stream.
Sample obtain_sample(Settings& s, const DistributionSpec& dist, std::uint64_t seed) {
    if (const auto path = s.text("sample")) return read_sample_file(*path);
    const auto n = s.count("n");
    if (!n) throw UsageError("needs --n or --sample");
    return draw_sample(dist, *n, derive_seed(seed, 0, kSampleStream));
}

// Class, sample and labels for `bound` and `entropy`.
struct Problem {
    ConceptClass cls = ConceptClass::intervals();
    std::optional<Sample> sample;
    std::vector<double> labels;
};

Problem build_problem(Settings& s, std::uint64_t seed, bool need_labels) {
    const std::string kind = s.text("class", "intervals");
    Problem p;
    if (kind == "intervals") {
        const auto dist = parse_dist(s);
        p.sample = obtain_sample(s, dist, seed);
        if (need_labels) {
            const Interval target = parse_interval_target(s);
            p.labels = s.has("labels") ? read_labels_file(*s.text("labels")) : evaluate(target, *p.sample);
        }
    } else if (kind == "boxes") {
        const std::size_t dim = s.count("dim", 2);
        if (dim == 0) throw UsageError("dim must be >= 1");
        p.cls = ConceptClass::axis_boxes(dim);
        const auto dist = parse_dist(s, dim);
        p.sample = obtain_sample(s, dist, seed);
        if (need_labels) {
            const Box target = parse_box_target(s, dim);
            p.labels = s.has("labels") ? read_labels_file(*s.text("labels")) : evaluate(target, *p.sample);
        }
    } else if (kind == "finite") {
        p.cls = load_finite_class_csv(s.required("vectors"));
        if (p.cls.vectors().empty()) throw UsageError("finite class file has no vectors");
        const std::size_t n = p.cls.vectors().front().size();
        p.sample = Sample::from_values(std::vector<double>(n, 0.0));
        if (need_labels) {
            p.labels = s.has("labels") ? read_labels_file(*s.text("labels")) : p.cls.vectors().front();
        }
    } else {
        throw UsageError("class must be intervals, boxes or finite");
    }
    return p;
}

int cmd_bound(Settings& s, std::ostream& out) {
    const Format fmt = output_format(s);
    const std::uint64_t seed = s.count("seed", 1);
    const Problem p = build_problem(s, seed, true);
    RiskBoundOptions opts;
    opts.eps = s.real("eps");
    const double delta = opts.eps ? 0.05 : s.real("delta", 0.05);
    opts.iterations = parse_iterations(s);
    const Constants c = parse_constants(s, "safe");
    opts.mode = c.mode;
    opts.custom = c.custom;
    opts.gamma = s.real("gamma", 0.5);
    opts.gamma_prime = s.real("gamma_prime", 0.5);
    opts.seed = derive_seed(seed, 0, kSignStream);

    const RiskBound rb = risk_bound(p.cls, p.labels, *p.sample, delta, opts);
    Provenance prov = s.provenance();
    prov.emplace_back("n_resolved", std::to_string(p.sample->size()));
    prov.emplace_back("eps_resolved", format_real(rb.eps));
    prov.emplace_back("N", std::to_string(rb.iterations));
    prov.emplace_back("bound", format_real(rb.bound));
    prov.emplace_back("certificate", format_real(rb.certificate));
    emit(s, out,
         fmt == Format::csv ? trace_csv(rb.trace, prov) : trace_json(rb.trace, prov, rb.certificate));
    if (s.has("output")) {
        out << "bound=" << format_real(rb.bound) << " eps=" << format_real(rb.eps) << " N=" << rb.iterations
            << " certificate=" << format_real(rb.certificate) << "\n";
    }
    return kOk;
}

void write_report(Settings& s, std::ostream& out, Format fmt, const std::string& csv, const std::string& json) {
    if (fmt == Format::json) {
        emit(s, out, json);
        return;
    }
    emit(s, out, csv);
    std::optional<std::string> summary = s.text("summary");
    if (!summary && s.has("output")) summary = *s.text("output") + ".json";
    if (summary) write_file(*summary, json);
}

int cmd_coverage(Settings& s, std::ostream& out, std::ostream& err) {
    const Format fmt = output_format(s);
    CoverageConfig cfg;
    cfg.target = parse_interval_target(s);
    cfg.dist = parse_dist(s);
    cfg.n = s.count("n", 1000);
    cfg.eps = s.real("eps");
    if (!cfg.eps) cfg.delta_conf = s.real("delta", 0.05);
    cfg.iterations = parse_iterations(s);
    const Constants c = parse_constants(s, "safe");
    cfg.mode = c.mode;
    cfg.custom = c.custom;
    cfg.gamma = s.real("gamma", 0.5);
    cfg.gamma_prime = s.real("gamma_prime", 0.5);
    cfg.reps = s.count("reps", 100);
    const std::string learner = s.text("learner", "minimal");
    if (learner == "minimal") {
        cfg.learner = LearnerKind::minimal;
    } else if (learner == "worst") {
        cfg.learner = LearnerKind::worst_consistent;
    } else {
        throw UsageError("learner must be minimal or worst");
    }
    cfg.master_seed = s.count("seed", 1);

    const ExperimentReport report = run_coverage(cfg);
    Provenance prov = s.provenance();
    prov.emplace_back("certificate", format_real(report.certificate));
    prov.emplace_back("tolerance", format_real(report.tolerance));
    write_report(s, out, fmt, coverage_csv(report, prov), report_json(report, prov));
    const bool exceeded = report.violation_frequency > report.tolerance;
    if (s.has("output")) {
        out << "violations=" << report.violations << "/" << report.rows.size()
            << " frequency=" << format_real(report.violation_frequency)
            << " tolerance=" << format_real(report.tolerance) << "\n";
    }
    if (exceeded) {
        err << "violation frequency " << format_real(report.violation_frequency) << " exceeds tolerance "
            << format_real(report.tolerance) << "\n";
        return kCoverageExceeded;
    }
    return kOk;
}

int cmd_rates(Settings& s, std::ostream& out) {
    const Format fmt = output_format(s);
    RatesConfig cfg;
    const std::string cls = s.text("class", "intervals");
    if (cls == "intervals") {
        cfg.cls = RatesClass::intervals;
    } else if (cls == "zero") {
        cfg.cls = RatesClass::zero;
    } else {
        throw UsageError("rates class must be intervals or zero");
    }
    cfg.target = parse_interval_target(s);
    cfg.dist = parse_dist(s);
    for (double v : s.reals("n_grid")) {
        if (!(v >= 1.0) || v != std::floor(v)) throw UsageError("n_grid entries must be positive integers");
        cfg.n_grid.push_back(static_cast<std::size_t>(v));
    }
    cfg.eps = s.real("eps");
    cfg.iterations = parse_iterations(s);
    const Constants c = parse_constants(s, "unit");
    cfg.mode = c.mode;
    cfg.custom = c.custom;
    cfg.gamma = s.real("gamma", 0.5);
    cfg.gamma_prime = s.real("gamma_prime", 0.5);
    cfg.reps = s.count("reps", 20);
    cfg.master_seed = s.count("seed", 1);

    const ExperimentReport report = run_rates(cfg);
    Provenance prov = s.provenance();
    if (report.slope) prov.emplace_back("slope", format_real(*report.slope));
    write_report(s, out, fmt, rates_csv(report, prov), report_json(report, prov));
    if (s.has("output") && report.slope) out << "slope=" << format_real(*report.slope) << "\n";
    return kOk;
}

void emit_table(Settings& s, std::ostream& out, Format fmt, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, const Provenance& prov) {
    emit(s, out, fmt == Format::csv ? table_csv(columns, rows, prov) : table_json(columns, rows, prov));
}

int cmd_oracle(Settings& s, std::ostream& out) {
    const Format fmt = output_format(s);
    const Interval target = parse_interval_target(s);
    const auto dist = parse_dist(s);
    const std::uint64_t seed = s.count("seed", 1);
    const Sample sample = obtain_sample(s, dist, seed);
    const auto k_max = s.count("k_max", 6);
    if (k_max > 1000) throw UsageError("k_max must be <= 1000");
    const auto seq = oracle_sequence(ConceptClass::intervals(), target, sample, dist, static_cast<int>(k_max));
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < seq.size(); ++k) rows.push_back({static_cast<double>(k), seq[k]});
    emit_table(s, out, fmt, {"k", "r"}, rows, s.provenance());
    return kOk;
}

EntropyCurve parse_curve(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "zero") return EntropyCurve::zero();
    if (kind == "power") {
        const auto v = parse_reals("entropy", arg);
        if (v.size() != 2) throw UsageError("entropy power:<amplitude>,<exponent>");
        return EntropyCurve::power(v[0], v[1]);
    }
    if (kind == "vc") return EntropyCurve::vc(parse_real("entropy", arg));
    if (kind == "file") return load_entropy_csv(arg);
    throw UsageError("entropy must be power:A,g, vc:L, zero or file:<path>");
}

int cmd_fixedpoint(Settings& s, std::ostream& out) {
    const Format fmt = output_format(s);
    const EntropyCurve curve = parse_curve(s.required("entropy"));
    const std::string variant = s.text("variant", "bracketing");
    std::vector<double> ns;
    if (s.has("n_grid")) {
        if (s.has("n")) throw UsageError("give either n or n_grid, not both");
        ns = s.reals("n_grid");
    } else {
        if (!s.has("n")) throw UsageError("fixedpoint needs --n or --n_grid");
        ns.push_back(*s.real("n"));
    }
    double K = kDefaultChainingConstant;
    double density_bound = 1.0;
    if (variant == "random") {
        K = s.real("K", kDefaultChainingConstant);
    } else if (variant == "inclusion") {
        density_bound = s.real("density_bound", 1.0);
    } else if (variant != "bracketing") {
        throw UsageError("variant must be random, bracketing or inclusion");
    }
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<double, double>> pairs;
    for (double n : ns) {
        FixedPointResult fp;
        if (variant == "random") {
            fp = random_fixed_point(curve, n, K);
        } else if (variant == "inclusion") {
            fp = inclusion_fixed_point(curve, n, density_bound);
        } else {
            fp = bracketing_fixed_point(curve, n);
        }
        rows.push_back({n, fp.delta});
        pairs.emplace_back(n, fp.delta);
    }
    Provenance prov = s.provenance();
    if (pairs.size() >= 3) prov.emplace_back("slope", format_real(rate_exponent_fit(pairs).slope));
    emit_table(s, out, fmt, {"n", "delta"}, rows, prov);
    return kOk;
}

int cmd_entropy(Settings& s, std::ostream& out) {
    const Format fmt = output_format(s);
    const auto radii = s.reals("radii");
    std::vector<std::vector<double>> rows;
    if (const auto spec = s.text("entropy")) {
        const EntropyCurve curve = parse_curve(*spec);
        for (double u : radii) rows.push_back({u, curve(u)});
    } else {
        const Problem p = build_problem(s, s.count("seed", 1), false);
        const EntropyCurve curve = empirical_covering_entropy(restrict(p.cls, *p.sample), radii);
        for (double u : radii) rows.push_back({u, curve(u)});
    }
    emit_table(s, out, fmt, {"u", "H"}, rows, s.provenance());
    return kOk;
}

int cmd_diagnose(Settings& s, std::ostream& out) {
    const Format fmt = output_format(s);
    DiagnoseConfig cfg;
    cfg.target = parse_interval_target(s);
    cfg.dist = parse_dist(s);
    cfg.n = s.count("n", 1000);
    cfg.ladder.eps = s.real("eps", 0.02);
    cfg.ladder.gamma = s.real("gamma", 0.5);
    cfg.ladder.gamma_prime = s.real("gamma_prime", 0.5);
    cfg.ladder.gamma_double_prime = s.real("gamma_double_prime", 0.5);
    if (s.has("radii")) {
        cfg.radii = s.reals("radii");
    } else {
        for (int k = 1; k <= 10; ++k) cfg.radii.push_back(0.05 * k);
        s.record("radii", join(cfg.radii));
    }
    cfg.mc_draws = s.count("mc_draws", 200);
    cfg.master_seed = s.count("seed", 1);
    cfg.with_phi4 = s.flag("phi4", true);
    const auto instance = s.count("instance", 0);

    const auto result = diagnose_ladder(cfg, instance);
    std::vector<std::vector<double>> rows;
    for (const auto& row : result) {
        std::vector<double> r{row.r};
        for (std::size_t k = 1; k <= 6; ++k) r.push_back(row.phi[k].value_or(std::numeric_limits<double>::quiet_NaN()));
        rows.push_back(std::move(r));
    }
    emit_table(s, out, fmt, {"r", "phi1", "phi2", "phi3", "phi4", "phi5", "phi6"}, rows, s.provenance());
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ParsedArgs parsed;
    try {
        parsed = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    Settings s(parsed);
    try {
        const std::string& c = parsed.command;
        if (c == "bound") return cmd_bound(s, out);
        if (c == "coverage") return cmd_coverage(s, out, err);
        if (c == "rates") return cmd_rates(s, out);
        if (c == "oracle") return cmd_oracle(s, out);
        if (c == "fixedpoint") return cmd_fixedpoint(s, out);
        if (c == "entropy") return cmd_entropy(s, out);
        if (c == "diagnose") return cmd_diagnose(s, out);
        err << "usage error: unknown command " << c << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntime;
    }
}

}  // namespace locrad::cli
