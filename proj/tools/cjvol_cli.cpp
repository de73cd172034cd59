#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cjvol/cjvol.hpp"

using namespace cjvol;
using nlohmann::json;

namespace {

constexpr int kSchema = 1;

enum class Format { json, csv };

struct Common {
    Format format = Format::json;
    std::string output;
    bool pi_units = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Knot parse_knot(const std::string& s) { return s == "E" ? Knot::E : Knot::B; }

Branch parse_branch(const std::string& s) { return s == "plus" ? Branch::plus : Branch::minus; }

double scale(const Common& c) { return c.pi_units ? pi : 1.0; }

ConeAngles angles_from(const Common& c, Knot k, std::vector<double> a) {
    if (static_cast<int>(a.size()) != component_count(k))
        throw UsageError(std::string("--alpha: knot ") + knot_name(k) + " takes " +
                         std::to_string(component_count(k)) + " value(s)");
    for (double& x : a) x *= scale(c);
    return ConeAngles::make(k, a);
}

json record(const char* kind) { return json{{"schema_version", kSchema}, {"record", kind}}; }

json signed_log_json(const SignedLogValue& v) { return json{{"sign", v.sign}, {"log_mag", v.sign ? json(v.log_mag) : json(nullptr)}}; }

std::vector<double> half_weights(const Weights& w) {
    std::vector<double> j;
    for (std::size_t i = 0; i < w.twice.size(); ++i) j.push_back(w.j(i));
    return j;
}

std::string num(double x) { return detail::shortest(x); }

// Writes records as one JSON object, JSON Lines, or CSV rows.
class Sink {
public:
    explicit Sink(const Common& c) : fmt_(c.format) {
        if (!c.output.empty()) {
            file_ = std::make_unique<std::ofstream>(c.output);
            if (!*file_) throw UsageError("cannot open output file " + c.output);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    Format format() const { return fmt_; }
    void line(const json& j) { os() << j.dump() << '\n'; }
    void csv(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os() << (i ? "," : "") << cells[i];
        os() << '\n';
    }

private:
    Format fmt_;
    std::unique_ptr<std::ofstream> file_;
};

struct JonesOpts {
    std::string knot = "E";
    int r = 0;
    std::vector<double> j, alpha;
    std::string branch = "minus";
};

void run_jones(const Common& c, const JonesOpts& o) {
    const Knot k = parse_knot(o.knot);
    Weights w;
    if (!o.j.empty() == !o.alpha.empty()) throw UsageError("jones: give exactly one of --j or --alpha");
    if (!o.j.empty()) {
        if (static_cast<int>(o.j.size()) != component_count(k)) throw UsageError("jones: wrong number of --j values");
        w = Weights::from_half_integers(k, o.j);
    } else {
        const auto a = angles_from(c, k, o.alpha);
        w = weights_for_angles(o.r, k, a.alpha, parse_branch(o.branch)).weights;
    }
    const auto v = colored_jones(o.r, w);
    Sink out(c);
    if (out.format() == Format::csv) {
        out.csv({"set", "first", "last", "alternating", "sign", "log_mag"});
        for (std::size_t i = 0; i < v.partials.size(); ++i) {
            const auto& s = v.partition.sets[i];
            const auto& p = v.partials[i].second;
            out.csv({s.label, std::to_string(s.first), std::to_string(s.last), s.alternating ? "1" : "0",
                     std::to_string(p.sign), p.sign ? num(p.log_mag) : ""});
        }
        out.csv({"total", "0", std::to_string(v.partition.k_max), "", std::to_string(v.total.sign),
                 v.total.sign ? num(v.total.log_mag) : ""});
        return;
    }
    json j = record("jones");
    j["knot"] = knot_name(k);
    j["r"] = o.r;
    j["weights"] = half_weights(v.weights);
    j["k_max"] = v.partition.k_max;
    j["total"] = signed_log_json(v.total);
    j["value"] = v.total.to_double();
    j["growth"] = v.growth();
    json parts = json::array();
    for (std::size_t i = 0; i < v.partials.size(); ++i) {
        const auto& s = v.partition.sets[i];
        json p = signed_log_json(v.partials[i].second);
        p["set"] = s.label;
        p["first"] = s.first;
        p["last"] = s.last;
        p["alternating"] = s.alternating;
        parts.push_back(p);
    }
    j["partials"] = parts;
    out.line(j);
}

struct AngleOpts {
    std::string knot = "E";
    std::vector<double> alpha;
};

void run_volume(const Common& c, const AngleOpts& o) {
    const auto a = angles_from(c, parse_knot(o.knot), o.alpha);
    const auto v = vol_cone(a);
    Sink out(c);
    if (out.format() == Format::csv) {
        out.csv({"term", "value"});
        for (const auto& [n, t] : v.terms) out.csv({n, num(t)});
        out.csv({"volume", num(v.volume)});
        return;
    }
    json j = record("volume");
    j["knot"] = knot_name(a.knot);
    j["angles"] = a.alpha;
    j["volume"] = v.volume;
    j["theta"] = v.theta;
    json t = json::object();
    for (const auto& [n, x] : v.terms) t[n] = x;
    j["terms"] = t;
    out.line(j);
}

struct PotentialOpts {
    AngleOpts angles;
    double from = 0.0, to = pi;
    int steps = 100;
};

void run_potential(const Common& c, const PotentialOpts& o) {
    const auto a = angles_from(c, parse_knot(o.angles.knot), o.angles.alpha);
    const double lo = o.from * scale(c), hi = o.to * scale(c);
    Sink out(c);
    if (out.format() == Format::csv) out.csv({"x", "im_phi"});
    for (int i = 0; i <= o.steps; ++i) {
        const double x = lo + (hi - lo) * i / o.steps;
        const double y = im_phi_real(a, x);
        if (out.format() == Format::csv) {
            out.csv({num(x), num(y)});
        } else {
            json j = record("potential");
            j["x"] = x;
            j["im_phi"] = y;
            out.line(j);
        }
    }
}

void run_critical(const Common& c, const AngleOpts& o) {
    const auto a = angles_from(c, parse_knot(o.knot), o.alpha);
    const auto cp = critical_points(a);
    std::vector<std::pair<std::string, double>> rows = {{"x0", cp.x0}};
    if (a.knot == Knot::E) {
        rows.emplace_back("theta_min", cp.theta_min);
        if (cp.theta_max_low) rows.emplace_back("theta_max_low", *cp.theta_max_low);
    } else {
        rows.emplace_back("t_A", cp.t_A);
        rows.emplace_back("t_B", cp.t_B);
        rows.emplace_back("T_A", cp.quartic.selected);
        rows.emplace_back("T_B", cp.sextic.selected);
    }
    Sink out(c);
    if (out.format() == Format::csv) {
        out.csv({"name", "value", "im_phi", "stationary_residual"});
        for (const auto& [n, x] : rows) out.csv({n, num(x), num(im_phi_real(a, x)), num(stationary_residual(a, x))});
        return;
    }
    json j = record("critical");
    j["knot"] = knot_name(a.knot);
    j["angles"] = a.alpha;
    for (const auto& [n, x] : rows) j[n] = x;
    if (a.knot == Knot::B) j["degenerate"] = cp.degenerate;
    j["im_phi_x0"] = im_phi_real(a, cp.x0);
    j["stationary_residual_x0"] = stationary_residual(a, cp.x0);
    out.line(j);
}

struct ConvergeOpts {
    AngleOpts angles;
    std::vector<int> rs;
    std::string branch = "minus";
};

void run_converge(const Common& c, const ConvergeOpts& o) {
    const auto a = angles_from(c, parse_knot(o.angles.knot), o.angles.alpha);
    const auto s = convergence_study(o.rs, a, parse_branch(o.branch));
    Sink out(c);
    if (out.format() == Format::csv) {
        out.csv({"r", "weights", "growth", "target", "error", "dominance", "cancellation_digits", "fit_residual"});
        for (std::size_t i = 0; i < s.records.size(); ++i) {
            const auto& g = s.records[i];
            std::string w;
            for (double x : half_weights(g.weights)) w += (w.empty() ? "" : " ") + num(x);
            out.csv({std::to_string(g.r), w, num(g.growth), num(g.target), num(g.error), num(g.dominance),
                     num(g.cancellation_digits), num(s.residuals[i])});
        }
        return;
    }
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        const auto& g = s.records[i];
        json j = record("growth");
        j["knot"] = knot_name(a.knot);
        j["angles"] = a.alpha;
        j["branch"] = branch_name(g.branch);
        j["r"] = g.r;
        j["weights"] = half_weights(g.weights);
        j["growth"] = g.growth;
        j["target"] = g.target;
        j["error"] = g.error;
        j["dominance"] = g.dominance;
        j["cancellation_digits"] = g.cancellation_digits;
        j["fit_residual"] = s.residuals[i];
        out.line(j);
    }
    json f = record("fit");
    f["limit"] = s.limit;
    f["limit_error"] = s.limit - s.target;
    f["log_coefficient"] = s.a;
    f["inverse_coefficient"] = s.b;
    f["residual_norm"] = s.residual_norm;
    f["relative_residual"] = s.relative_residual;
    out.line(f);
}

void run_threshold(const Common& c, const char* name, const ThresholdResult& t) {
    Sink out(c);
    if (out.format() == Format::csv) {
        out.csv({name, "bracket_width", "split_verified"});
        out.csv({num(t.value), num(t.bracket_width), t.split_verified ? "1" : "0"});
        return;
    }
    json j = record(name);
    j[name] = t.value;
    j["bracket_width"] = t.bracket_width;
    j["split_verified"] = t.split_verified;
    out.line(j);
}

struct RegionOpts {
    double lo = pi / 2, hi = pi;
    int steps = 40;
    bool boundary = false;
};

void run_region(const Common& c, const RegionOpts& o) {
    const auto g = omega0_classify(o.lo * scale(c), o.hi * scale(c), o.steps);
    Sink out(c);
    const bool csv = out.format() == Format::csv;
    if (o.boundary) {
        if (csv) out.csv({"alpha1", "alpha2", "alpha3"});
        for (const auto& p : g.boundary) {
            if (csv) {
                out.csv({num(p[0]), num(p[1]), num(p[2])});
            } else {
                json j = record("boundary");
                j["angles"] = p;
                out.line(j);
            }
        }
        return;
    }
    if (csv) out.csv({"alpha1", "alpha2", "alpha3", "condition", "in_omega0"});
    for (const auto& s : g.samples) {
        if (csv) {
            out.csv({num(s.angles[0]), num(s.angles[1]), num(s.angles[2]), num(s.condition), s.in_omega0 ? "1" : "0"});
        } else {
            json j = record("region");
            j["angles"] = s.angles;
            j["condition"] = s.condition;
            j["in_omega0"] = s.in_omega0;
            out.line(j);
        }
    }
}

struct ContourOpts {
    AngleOpts angles;
    int m = 0;
    std::string mode = "path";
    std::optional<double> level;
    std::string quadrant = "first";
    std::string sheet = "principal";
    int nu = 1201, nv = 801;
};

void run_contour(const Common& c, const ContourOpts& o) {
    const auto a = angles_from(c, parse_knot(o.angles.knot), o.angles.alpha);
    const Sheet sheet = o.sheet == "continued" ? Sheet::continued : Sheet::principal;
    Sink out(c);
    if (o.mode == "field") {
        GridSpec g = default_grid(a);
        g.nu = o.nu;
        g.nv = o.nv;
        export_grid(field(a, o.m, g, sheet), out.format() == Format::csv ? GridFormat::csv : GridFormat::json, out.os());
        return;
    }
    const double U = o.level ? *o.level : default_level(a);
    const Quadrant q = o.quadrant == "fourth" ? Quadrant::fourth : Quadrant::first;
    const auto p = level_path(a, o.m, U, q);
    if (out.format() == Format::csv) {
        out.csv({"u", "v"});
        if (p)
            for (const auto& [u, v] : p->points) out.csv({num(u), num(v)});
        return;
    }
    json j = record("level_path");
    j["knot"] = knot_name(a.knot);
    j["angles"] = a.alpha;
    j["m"] = o.m;
    j["level"] = U;
    j["quadrant"] = quadrant_name(q);
    j["found"] = p.has_value();
    if (p) {
        j["u_end"] = p->u_end;
        j["overshoot"] = p->overshoot;
        json arcs = json::array();
        for (const auto& arc : p->arcs)
            arcs.push_back({{"u_start", arc.u_start}, {"u_end", arc.u_end}, {"v_extreme", arc.v_extreme}});
        j["arcs"] = arcs;
        json pts = json::array();
        for (const auto& [u, v] : p->points) pts.push_back({u, v});
        j["points"] = pts;
    }
    out.line(j);
}

void add_angles(CLI::App* s, AngleOpts& o) {
    s->add_option("--knot", o.knot, "E or B")->check(CLI::IsMember({"E", "B"}))->required();
    s->add_option("--alpha", o.alpha, "cone angle(s): one for E, three for B")->required()->expected(1, 3);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colored Jones invariants of the figure-eight knot and Borromean rings at odd roots of unity"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};
    app.add_option("--format", common.format, "output format: json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--output,-o", common.output, "write to this file instead of standard output");
    app.add_flag("--pi-units", common.pi_units, "read angle inputs as multiples of pi");

    std::function<void()> action;

    JonesOpts jo;
    auto* jones = app.add_subcommand("jones", "colored Jones invariant with partial sums");
    jones->add_option("--knot", jo.knot, "E or B")->check(CLI::IsMember({"E", "B"}))->required();
    jones->add_option("--r", jo.r, "odd level r >= 3")->required();
    jones->add_option("--j", jo.j, "half-integer weight(s)")->expected(1, 3);
    jones->add_option("--alpha", jo.alpha, "cone angle(s), converted to weights")->expected(1, 3);
    jones->add_option("--branch", jo.branch, "weight branch for --alpha")->check(CLI::IsMember({"minus", "plus"}));
    jones->callback([&] { action = [&] { run_jones(common, jo); }; });

    AngleOpts vo;
    auto* volume = app.add_subcommand("volume", "cone-manifold volume");
    add_angles(volume, vo);
    volume->callback([&] { action = [&] { run_volume(common, vo); }; });

    PotentialOpts po;
    auto* potential = app.add_subcommand("potential", "Im Phi on the real axis");
    add_angles(potential, po.angles);
    potential->add_option("--from", po.from, "start of the sweep");
    potential->add_option("--to", po.to, "end of the sweep");
    potential->add_option("--steps", po.steps, "number of intervals")->check(CLI::PositiveNumber);
    potential->callback([&] { action = [&] { run_potential(common, po); }; });

    AngleOpts co;
    auto* critical = app.add_subcommand("critical", "extremal points of Im Phi");
    add_angles(critical, co);
    critical->callback([&] { action = [&] { run_critical(common, co); }; });

    ConvergeOpts cvo;
    auto* converge = app.add_subcommand("converge", "growth rates and log r / r fit");
    add_angles(converge, cvo.angles);
    converge->add_option("--r", cvo.rs, "odd levels, at least three")->required()->expected(3, 1000);
    converge->add_option("--branch", cvo.branch, "weight branch")->check(CLI::IsMember({"minus", "plus"}));
    converge->callback([&] { action = [&] { run_converge(common, cvo); }; });

    int scan = 400;
    auto* alpha0 = app.add_subcommand("alpha0", "threshold angle for the figure-eight knot");
    alpha0->add_option("--scan", scan, "coarse scan points")->check(CLI::Range(2, 1000000));
    alpha0->callback([&] { action = [&] { run_threshold(common, "alpha0", threshold_alpha0(scan)); }; });

    auto* bbound = app.add_subcommand("bbound", "equal-angle bound for the Borromean rings");
    bbound->add_option("--scan", scan, "coarse scan points")->check(CLI::Range(2, 1000000));
    bbound->callback([&] { action = [&] { run_threshold(common, "bbound", equal_angle_bound_B(scan)); }; });

    RegionOpts ro;
    auto* region = app.add_subcommand("region", "classify a cube of angle triples");
    region->add_option("--lo", ro.lo, "lower corner of the cube");
    region->add_option("--hi", ro.hi, "upper corner (excluded)");
    region->add_option("--steps", ro.steps, "points per axis")->check(CLI::PositiveNumber);
    region->add_flag("--boundary", ro.boundary, "emit interpolated boundary points only");
    region->callback([&] { action = [&] { run_region(common, ro); }; });

    ContourOpts cto;
    auto* contour = app.add_subcommand("contour", "field grid or level path of Im(Phi + 2 pi m z)");
    add_angles(contour, cto.angles);
    contour->add_option("--m", cto.m, "integer shift m")->required();
    contour->add_option("--mode", cto.mode, "path or field")->check(CLI::IsMember({"path", "field"}));
    contour->add_option("--level", cto.level, "level U (default: midpoint rule)");
    contour->add_option("--quadrant", cto.quadrant, "first or fourth")->check(CLI::IsMember({"first", "fourth"}));
    contour->add_option("--sheet", cto.sheet, "field sheet: principal or continued")
        ->check(CLI::IsMember({"principal", "continued"}));
    contour->add_option("--nu", cto.nu, "grid points in u")->check(CLI::Range(2, 100000));
    contour->add_option("--nv", cto.nv, "grid points in v")->check(CLI::Range(2, 100000));
    contour->callback([&] { action = [&] { run_contour(common, cto); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        action();
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainFamily& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalFamily& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 4;
    }
}
