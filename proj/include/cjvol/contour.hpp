#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "angles.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "specfun.hpp"

namespace cjvol {

// Sample points (not cells): nu x nv points spanning the closed box.
struct GridSpec {
    double u_min = -0.1, u_max = 1.0;
    double v_min = -1.5, v_max = 1.5;
    int nu = 1201, nv = 801;

    double du() const { return (u_max - u_min) / (nu - 1); }
    double dv() const { return (v_max - v_min) / (nv - 1); }
    double u(int i) const { return u_min + (u_max - u_min) * i / (nu - 1); }
    double v(int j) const { return v_min + (v_max - v_min) * j / (nv - 1); }
};

// Right end of the interval I(alpha) the deformed path has to cover.
inline double path_end(const ConeAngles& a) { return a.min() / 2; }

inline GridSpec default_grid(const ConeAngles& a) {
    GridSpec g;
    g.u_max = path_end(a) + 0.1;
    return g;
}

// Im(Phi(z) + 2 pi m z)
inline double field_value(const ConeAngles& a, int m, cplx z, Sheet sheet = Sheet::principal) {
    const cplx p = sheet == Sheet::principal ? phi(a, z) : phi_continued(a, z);
    return p.imag() + 2.0 * pi * m * z.imag();
}

struct FieldGrid {
    ConeAngles angles;
    int m = 0;
    Sheet sheet = Sheet::principal;
    GridSpec spec;
    std::vector<double> value;  // row-major in v: index j * nu + i
    std::vector<unsigned char> masked;

    double at(int i, int j) const { return value[std::size_t(j) * spec.nu + i]; }
    bool is_masked(int i, int j) const { return masked[std::size_t(j) * spec.nu + i] != 0; }
};

namespace detail {

// A sample is masked when one of its adjacent cells touches a cut.
inline bool near_cut(const std::vector<BranchCut>& cuts, double u, double v, double du, double dv) {
    for (const auto& c : cuts) {
        if (std::abs(u - c.anchor) > du) continue;
        if (c.direction > 0 ? v + dv >= 0.0 : v - dv <= 0.0) return true;
    }
    return false;
}

inline bool near_origin(Knot k, double u, double v, double du, double dv) {
    return k == Knot::B && std::abs(u) <= du && std::abs(v) <= dv;
}

} // namespace detail

inline FieldGrid field(const ConeAngles& a, int m, const GridSpec& g, Sheet sheet = Sheet::principal) {
    if (g.nu < 2 || g.nv < 2 || !(g.u_max > g.u_min) || !(g.v_max > g.v_min))
        throw DomainError("field: grid needs at least 2 x 2 points over a nonempty box");
    FieldGrid f{a, m, sheet, g, {}, {}};
    const std::size_t n = std::size_t(g.nu) * g.nv;
    f.value.assign(n, std::numeric_limits<double>::quiet_NaN());
    f.masked.assign(n, 0);
    const auto cuts = branch_cuts(a, g.u_min - 1.0, g.u_max + 1.0);
    const double du = g.du(), dv = g.dv();
    parallel_for(std::size_t(g.nv), [&](std::size_t j) {
        const double v = g.v(int(j));
        for (int i = 0; i < g.nu; ++i) {
            const double u = g.u(i);
            const std::size_t idx = j * g.nu + i;
            const bool mask = detail::near_origin(a.knot, u, v, du, dv) ||
                              (sheet == Sheet::principal && detail::near_cut(cuts, u, v, du, dv));
            if (mask) {
                f.masked[idx] = 1;
                continue;
            }
            f.value[idx] = field_value(a, m, {u, v}, sheet);
        }
    });
    return f;
}

struct Partials {
    double du;
    double dv;
};

namespace detail {

inline double safe_log_abs(cplx w) {
    const double r = std::abs(w);
    if (r < 1e-14) throw SingularityError("partials: logarithm of a vanishing modulus");
    return std::log(r);
}

inline double safe_arg(cplx w) {
    if (std::abs(w) < 1e-14) throw SingularityError("partials: argument of zero");
    return std::arg(w);
}

} // namespace detail

// Closed-form partial derivatives of Im(Phi(u + iv) + 2 pi m (u + iv)) on the principal sheet.
inline Partials partials(const ConeAngles& a, int m, cplx z) {
    const double u = z.real(), v = z.imag();
    const double c2v = std::cosh(2 * v), s2v = std::sinh(2 * v);
    const double c2u = std::cos(2 * u), s2u = std::sin(2 * u);
    Partials p{0.0, 0.0};
    for (double al : a.alpha) {
        p.du += detail::safe_log_abs({2 * std::cos(al) - 2 * c2v * c2u, 2 * s2v * s2u});
        p.dv -= detail::safe_arg(1.0 - std::exp(-2 * v) * std::polar(1.0, al + 2 * u));
        p.dv -= detail::safe_arg(1.0 - std::exp(2 * v) * std::polar(1.0, al - 2 * u));
    }
    if (a.knot == Knot::E) {
        p.dv += a.alpha[0] + 2 * pi * m;
        return p;
    }
    const cplx w1 = 1.0 - std::exp(-2 * v) * std::polar(1.0, 2 * u);
    const cplx w2 = 1.0 - std::exp(-4 * v) * std::polar(1.0, 4 * u);
    p.du += 2 * detail::safe_log_abs(w1) - 4 * detail::safe_log_abs(w2) - 6 * v;
    p.dv += -2 * detail::safe_arg(w1) + 4 * detail::safe_arg(w2) + a.sum() + 5 * pi - 6 * u + 2 * pi * m;
    return p;
}

enum class Quadrant { first, fourth };

inline const char* quadrant_name(Quadrant q) { return q == Quadrant::first ? "first" : "fourth"; }

struct LevelArc {
    double u_start = 0.0;
    double u_end = 0.0;
    double v_extreme = 0.0;  // largest |v| reached, signed
    std::size_t first_vertex = 0;
    std::size_t last_vertex = 0;
};

struct LevelPath {
    std::vector<std::pair<double, double>> points;
    double level = 0.0;
    Quadrant quadrant = Quadrant::first;
    int m = 0;
    double u_end = 0.0;      // where the path rejoins the real axis for the last time
    double overshoot = 0.0;  // max(0, u_end - path_end)
    double cell_u = 0.0, cell_v = 0.0;
    std::vector<LevelArc> arcs;
};

struct LevelPathOptions {
    int u_cells = 1200;
    int v_cells = 400;
    double v_extent = 1.5;
    double margin = 0.1;
    Sheet sheet = Sheet::continued;
};

// Midpoint of (Im Phi(alpha_1/2), Im Phi(x0)).
inline double default_level(const ConeAngles& a) {
    const auto cp = critical_points(a);
    return 0.5 * (im_phi_real(a, path_end(a)) + im_phi_real(a, cp.x0));
}

namespace detail {

// Lazily evaluated quadrant grid: point (i, j) sits at (u_lo + i du, sgn j dv).
class QuadrantGrid {
public:
    QuadrantGrid(const ConeAngles& a, int m, double level, Quadrant q, const LevelPathOptions& o)
        : a_(a), m_(m), level_(level), sheet_(o.sheet), nu_(o.u_cells), nv_(o.v_cells),
          u_lo_(-o.margin), sgn_(q == Quadrant::first ? 1.0 : -1.0) {
        du_ = (path_end(a) + 2 * o.margin) / nu_;
        dv_ = o.v_extent / nv_;
        cache_.assign(std::size_t(nu_ + 1) * (nv_ + 1), std::numeric_limits<double>::quiet_NaN());
        if (sheet_ == Sheet::principal) cuts_ = branch_cuts(a, u_lo_ - 1.0, u_lo_ + nu_ * du_ + 1.0);
    }
    int nu() const { return nu_; }
    int nv() const { return nv_; }
    double du() const { return du_; }
    double dv() const { return dv_; }
    double u(int i) const { return u_lo_ + i * du_; }
    double v(int j) const { return sgn_ * j * dv_; }

    bool masked(int i, int j) const {
        return near_origin(a_.knot, u(i), v(j), du_, dv_) ||
               (sheet_ == Sheet::principal && j > 0 && near_cut(cuts_, u(i), v(j), du_, dv_));
    }
    // field minus level
    double g(int i, int j) {
        double& c = cache_[std::size_t(j) * (nu_ + 1) + i];
        if (std::isnan(c)) c = field_value(a_, m_, {u(i), v(j)}, j == 0 ? Sheet::principal : sheet_) - level_;
        return c;
    }
    bool above(int i, int j) { return g(i, j) > 0.0; }

private:
    ConeAngles a_;
    int m_;
    double level_;
    Sheet sheet_;
    int nu_, nv_;
    double u_lo_, sgn_;
    double du_ = 0, dv_ = 0;
    std::vector<double> cache_;
    std::vector<BranchCut> cuts_;
};

enum class Side { bottom, right, top, left };

struct TraceResult {
    bool landed = false;
    int landing_edge = -1;  // i of the bottom-row edge (i, i+1)
    std::vector<std::pair<double, double>> points;
};

// Follows the level curve entering cell (i0, 0) through its bottom edge until it
// leaves through the bottom row again (landing) or through any other boundary.
inline TraceResult trace_arc(QuadrantGrid& G, int i0) {
    TraceResult res;
    auto crossing = [&](int i, int j, int i2, int j2) {
        const double g0 = G.g(i, j), g1 = G.g(i2, j2);
        const double t = g0 / (g0 - g1);
        return std::make_pair(G.u(i) + t * (G.u(i2) - G.u(i)), G.v(j) + t * (G.v(j2) - G.v(j)));
    };
    auto edge_points = [](int i, int j, Side s) {
        switch (s) {
        case Side::bottom: return std::array<int, 4>{i, j, i + 1, j};
        case Side::right: return std::array<int, 4>{i + 1, j, i + 1, j + 1};
        case Side::top: return std::array<int, 4>{i, j + 1, i + 1, j + 1};
        default: return std::array<int, 4>{i, j, i, j + 1};
        }
    };
    auto crosses = [&](int i, int j, Side s) {
        const auto e = edge_points(i, j, s);
        return G.above(e[0], e[1]) != G.above(e[2], e[3]);
    };

    int i = i0, j = 0;
    Side entry = Side::bottom;
    {
        const auto e = edge_points(i, j, entry);
        res.points.push_back(crossing(e[0], e[1], e[2], e[3]));
    }
    const long max_steps = 4L * (G.nu() + 1) * (G.nv() + 1);
    int masked_hits = 0;
    for (long step = 0; step < max_steps; ++step) {
        if (G.masked(i, j) || G.masked(i + 1, j) || G.masked(i + 1, j + 1) || G.masked(i, j + 1)) {
            if (++masked_hits > 1) throw ResolutionError("level_path: level curve runs into masked cells");
            return res;
        }
        std::vector<Side> cross;
        for (Side s : {Side::bottom, Side::right, Side::top, Side::left})
            if (crosses(i, j, s)) cross.push_back(s);
        Side exit;
        if (cross.size() == 2) {
            exit = cross[0] == entry ? cross[1] : cross[0];
        } else if (cross.size() == 4) {
            const double center = 0.25 * (G.g(i, j) + G.g(i + 1, j) + G.g(i + 1, j + 1) + G.g(i, j + 1));
            const bool joined_02 = (center > 0.0) == G.above(i, j);
            // joined_02: curves separate corner 1 (bottom, right) and corner 3 (top, left)
            auto pair_of = [&](Side s) {
                if (joined_02) {
                    switch (s) {
                    case Side::bottom: return Side::right;
                    case Side::right: return Side::bottom;
                    case Side::top: return Side::left;
                    default: return Side::top;
                    }
                }
                switch (s) {
                case Side::bottom: return Side::left;
                case Side::left: return Side::bottom;
                case Side::top: return Side::right;
                default: return Side::top;
                }
            };
            exit = pair_of(entry);
        } else {
            return res;  // inconsistent cell, treat as lost
        }
        const auto e = edge_points(i, j, exit);
        res.points.push_back(crossing(e[0], e[1], e[2], e[3]));
        switch (exit) {
        case Side::bottom:
            if (j == 0) {
                res.landed = true;
                res.landing_edge = i;
                return res;
            }
            --j;
            entry = Side::top;
            break;
        case Side::top:
            if (j + 1 == G.nv()) return res;
            ++j;
            entry = Side::bottom;
            break;
        case Side::left:
            if (i == 0) return res;
            --i;
            entry = Side::right;
            break;
        case Side::right:
            if (i + 1 == G.nu()) return res;
            ++i;
            entry = Side::left;
            break;
        }
    }
    return res;
}

} // namespace detail

// Deformation of [0, alpha_1/2]: real-axis pieces where Im f <= level, bridged over every
// excursion above the level by a level-curve arc in the requested quadrant.
inline std::optional<LevelPath> level_path(const ConeAngles& a, int m, double level, Quadrant q,
                                           const LevelPathOptions& opt = {}) {
    require_hyperbolic(a, "level_path");
    if (!(level > 0.0)) return std::nullopt;  // Im f vanishes at the origin
    detail::QuadrantGrid G(a, m, level, q, opt);
    const double x_end = path_end(a);

    LevelPath path;
    path.level = level;
    path.quadrant = q;
    path.m = m;
    path.cell_u = G.du();
    path.cell_v = G.dv();
    path.points.push_back({0.0, 0.0});

    int i = 0;
    while (G.u(i + 1) <= 0.0) ++i;  // edge (i, i+1) contains u = 0
    if (G.above(i, 0)) return std::nullopt;
    double u_last = 0.0;
    while (G.u(i) < x_end) {
        if (G.above(i + 1, 0)) {
            auto tr = detail::trace_arc(G, i);
            if (!tr.landed || tr.landing_edge <= i) return std::nullopt;
            // the arc must come down at the first downward crossing after i
            for (int k = i + 1; k <= tr.landing_edge; ++k)
                if (!G.above(k, 0)) return std::nullopt;
            LevelArc arc;
            arc.u_start = tr.points.front().first;
            arc.u_end = tr.points.back().first;
            arc.first_vertex = path.points.size();
            for (const auto& p : tr.points) {
                if (std::abs(p.second) > std::abs(arc.v_extreme)) arc.v_extreme = p.second;
                path.points.push_back(p);
            }
            arc.last_vertex = path.points.size() - 1;
            path.arcs.push_back(arc);
            u_last = arc.u_end;
            i = tr.landing_edge + 1;
            if (G.u(i) < x_end) {
                path.points.push_back({G.u(i), 0.0});
                u_last = G.u(i);
            }
            continue;
        }
        ++i;
        if (G.u(i) > 0.0 && G.u(i) < x_end) {
            path.points.push_back({G.u(i), 0.0});
            u_last = G.u(i);
        }
    }
    if (u_last < x_end) {
        path.points.push_back({x_end, 0.0});
        u_last = x_end;
    }
    path.u_end = u_last;
    path.overshoot = std::max(0.0, u_last - x_end);
    return path;
}

enum class GridFormat { csv, json };

namespace detail {

inline std::string shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace detail

inline void export_grid(const FieldGrid& f, GridFormat fmt, std::ostream& os) {
    const auto& g = f.spec;
    if (fmt == GridFormat::csv) {
        os << "u,v,value,masked\n";
        for (int j = 0; j < g.nv; ++j)
            for (int i = 0; i < g.nu; ++i) {
                os << detail::shortest(g.u(i)) << ',' << detail::shortest(g.v(j)) << ',';
                if (f.is_masked(i, j))
                    os << ",1\n";
                else
                    os << detail::shortest(f.at(i, j)) << ",0\n";
            }
    } else {
        nlohmann::json doc;
        doc["schema_version"] = 1;
        doc["knot"] = knot_name(f.angles.knot);
        doc["angles"] = f.angles.alpha;
        doc["m"] = f.m;
        doc["sheet"] = f.sheet == Sheet::principal ? "principal" : "continued";
        std::vector<double> us(g.nu), vs(g.nv);
        for (int i = 0; i < g.nu; ++i) us[i] = g.u(i);
        for (int j = 0; j < g.nv; ++j) vs[j] = g.v(j);
        doc["u"] = us;
        doc["v"] = vs;
        nlohmann::json rows = nlohmann::json::array();
        for (int j = 0; j < g.nv; ++j) {
            nlohmann::json row = nlohmann::json::array();
            for (int i = 0; i < g.nu; ++i)
                row.push_back(f.is_masked(i, j) ? nlohmann::json(nullptr) : nlohmann::json(f.at(i, j)));
            rows.push_back(std::move(row));
        }
        doc["value"] = std::move(rows);
        os << doc.dump() << '\n';
    }
}

} // namespace cjvol
