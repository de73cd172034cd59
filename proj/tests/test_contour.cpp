#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cjvol/cjvol.hpp"

using namespace cjvol;

namespace {

const ConeAngles kE = ConeAngles::E(7 * pi / 12);
const ConeAngles kB = ConeAngles::B(8 * pi / 12, 9 * pi / 12, 10 * pi / 12);

bool near_any_cut(const ConeAngles& a, cplx z, double d) {
    for (const auto& c : branch_cuts(a, z.real() - 1, z.real() + 1))
        if (std::abs(z.real() - c.anchor) < d && z.imag() * c.direction >= 0) return true;
    return false;
}

void check_path(const LevelPath& p, const ConeAngles& a, Quadrant q, bool needs_arcs = true) {
    ASSERT_GE(p.points.size(), 2u);
    EXPECT_EQ(p.points.front().second, 0.0);
    EXPECT_EQ(p.points.back().second, 0.0);
    if (needs_arcs) {
        ASSERT_FALSE(p.arcs.empty());
    }
    if (p.arcs.empty()) {
        // the real segment itself stays at or below the level
        for (const auto& [u, v] : p.points) EXPECT_LE(im_phi_real(a, u) + 2 * pi * p.m * v, p.level) << u;
    }
    const double diag = std::hypot(p.cell_u, p.cell_v);
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        const auto [u, v] = p.points[i];
        if (q == Quadrant::first) {
            EXPECT_GE(v, 0.0);
        } else {
            EXPECT_LE(v, 0.0);
        }
        if (i > 0) {
            const auto [pu, pv] = p.points[i - 1];
            // real-axis segments join grid nodes; arc vertices lie within a cell of each other
            if (v != 0.0 || pv != 0.0) {
                EXPECT_LE(std::hypot(u - pu, v - pv), diag * (1 + 1e-9));
            }
        }
    }
    for (const auto& arc : p.arcs)
        for (std::size_t i = arc.first_vertex + 1; i < arc.last_vertex; ++i) {
            const auto [u, v] = p.points[i];
            const double f = field_value(a, p.m, {u, v}, Sheet::continued);
            EXPECT_LE(std::abs(f - p.level), 5e-3) << u << " " << v;
        }
}

} // namespace

TEST(Field, OriginVanishes) {
    for (const auto& a : {kE, kB, ConeAngles::E(0.2)})
        for (int m : {-4, -1, 0, 3}) EXPECT_NEAR(field_value(a, m, cplx(a.knot == Knot::E ? 0.0 : 1e-14, 0.0)), 0.0, 1e-12);
}

TEST(Field, RealRowMatchesImPhi) {
    GridSpec g = default_grid(kE);
    g.nu = 101;
    g.nv = 11;
    const auto f = field(kE, 0, g);
    const int j0 = 5;
    ASSERT_EQ(g.v(j0), 0.0);
    int masked = 0;
    for (int i = 0; i < g.nu; ++i) {
        if (f.is_masked(i, j0)) {
            // only next to the cut anchored at alpha/2
            EXPECT_LE(std::abs(g.u(i) - kE.alpha[0] / 2), g.du()) << g.u(i);
            ++masked;
            continue;
        }
        EXPECT_NEAR(f.at(i, j0), im_phi_real(kE, g.u(i)), 1e-10);
    }
    EXPECT_LE(masked, 2);
}

TEST(Field, MasksCutsAndBorromeanOrigin) {
    GridSpec g = default_grid(kB);
    g.nu = 61;
    g.nv = 41;
    const auto f = field(kB, -4, g);
    int masked = 0;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            if (f.is_masked(i, j)) {
                ++masked;
                EXPECT_TRUE(std::isnan(f.at(i, j)));
            } else {
                EXPECT_TRUE(std::isfinite(f.at(i, j)));
            }
        }
    EXPECT_GT(masked, 0);
    // origin column sits next to u = 0
    int i0 = 0;
    while (g.u(i0 + 1) <= 0.0) ++i0;
    EXPECT_TRUE(f.is_masked(i0, (g.nv - 1) / 2) || f.is_masked(i0 + 1, (g.nv - 1) / 2));
}

TEST(Partials, FigureEightRealAxis) {
    for (double al : {0.3, 1.0, 7 * pi / 12})
        for (int m : {-1, 0, 2})
            for (double u : {0.05, 0.1, 0.2})
                if (u < al / 2) {
                    EXPECT_NEAR(partials(ConeAngles::E(al), m, u).dv, (2 * m + 1) * pi, 1e-9);
                }
}

TEST(Partials, FigureEightLargeV) {
    const auto p = partials(ConeAngles::E(0.5), -1, cplx(0.2, 30.0));
    EXPECT_NEAR(p.dv, 2 * 0.2 - pi, 1e-9);
    EXPECT_LT(p.dv, 0.0);
}

TEST(Partials, MatchFiniteDifferences) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(0.02, 1.5), V(-1.5, 1.5);
    const double h = 1e-5;
    for (const auto& [a, m] : {std::pair{ConeAngles::E(1.0), -1}, std::pair{ConeAngles::B(1.0, 1.5, 2.0), -4}}) {
        int tested = 0;
        while (tested < 100) {
            const cplx z(U(rng), V(rng));
            if (near_any_cut(a, z, 1e-2)) continue;
            const auto p = partials(a, m, z);
            if (std::abs(p.du) < 1e-3 || std::abs(p.dv) < 1e-3) continue;
            const double fu = (field_value(a, m, z + h) - field_value(a, m, z - h)) / (2 * h);
            const double fv = (field_value(a, m, z + cplx(0, h)) - field_value(a, m, z - cplx(0, h))) / (2 * h);
            EXPECT_LE(std::abs(fu - p.du) / std::abs(p.du), 1e-6) << z;
            EXPECT_LE(std::abs(fv - p.dv) / std::abs(p.dv), 1e-6) << z;
            ++tested;
        }
    }
}

TEST(Partials, SingularityError) {
    // 2 cos(alpha) - 2 cos(2u) vanishes at u = alpha/2
    EXPECT_THROW(partials(ConeAngles::E(1.0), 0, cplx(0.5, 0.0)), SingularityError);
    EXPECT_THROW(partials(ConeAngles::B(1.0, 1.5, 2.0), 0, cplx(0.0, 0.0)), SingularityError);
}

TEST(LevelPath, FigureEightBothQuadrants) {
    const double U = default_level(kE);
    EXPECT_NEAR(U, 0.5 * (im_phi_real(kE, 7 * pi / 24) + 0.5 * vol_cone(kE).volume), 1e-12);
    const auto p = level_path(kE, -1, U, Quadrant::first);
    ASSERT_TRUE(p.has_value());
    check_path(*p, kE, Quadrant::first);
    EXPECT_GT(p->arcs.front().v_extreme, 0.0);
    const auto q = level_path(kE, 0, U, Quadrant::fourth);
    ASSERT_TRUE(q.has_value());
    check_path(*q, kE, Quadrant::fourth);
    EXPECT_LT(q->arcs.front().v_extreme, 0.0);
    // mirror images of each other
    EXPECT_NEAR(p->arcs.front().v_extreme, -q->arcs.front().v_extreme, 1e-9);
    EXPECT_NEAR(p->u_end, q->u_end, 1e-9);
    // the level lies above Im Phi at alpha/2 for this angle, so the last arc lands past it
    EXPECT_GT(p->overshoot, 0.0);
    EXPECT_LT(p->overshoot, 0.05);
}

TEST(LevelPath, BorromeanBothQuadrants) {
    const double U = default_level(kB);
    const auto p = level_path(kB, -4, U, Quadrant::first);
    ASSERT_TRUE(p.has_value());
    check_path(*p, kB, Quadrant::first);
    EXPECT_EQ(p->overshoot, 0.0);
    const auto q = level_path(kB, -3, U, Quadrant::fourth);
    ASSERT_TRUE(q.has_value());
    check_path(*q, kB, Quadrant::fourth);
    EXPECT_EQ(q->overshoot, 0.0);
}

TEST(LevelPath, ExistsBelowAlpha0) {
    const double a0 = threshold_alpha0().value;
    for (int i = 1; i <= 6; ++i) {
        const auto a = ConeAngles::E(a0 * i / 7.0);
        const double U = default_level(a);
        const auto p = level_path(a, -1, U, Quadrant::first);
        const auto q = level_path(a, 0, U, Quadrant::fourth);
        ASSERT_TRUE(p.has_value()) << a.alpha[0];
        ASSERT_TRUE(q.has_value()) << a.alpha[0];
        check_path(*p, a, Quadrant::first, false);
        check_path(*q, a, Quadrant::fourth, false);
        EXPECT_EQ(p->overshoot, 0.0);
    }
}

TEST(LevelPath, AbsentForWrongQuadrant) {
    const double U = default_level(kE);
    EXPECT_FALSE(level_path(kE, -1, U, Quadrant::fourth).has_value());
    EXPECT_FALSE(level_path(kE, -1, -1.0, Quadrant::first).has_value());
}

TEST(Export, CsvSmallGrid) {
    GridSpec g;
    g.u_min = 0.1;
    g.u_max = 0.2;
    g.v_min = 0.0;
    g.v_max = 0.1;
    g.nu = 2;
    g.nv = 2;
    auto f = field(ConeAngles::E(0.5), 0, g);
    f.masked[3] = 1;
    std::ostringstream os;
    export_grid(f, GridFormat::csv, os);
    std::istringstream is(os.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "u,v,value,masked");
    EXPECT_EQ(lines[4], "0.2,0.1,,1");
    // bit-exact round trip
    const auto c1 = lines[1].find(',', lines[1].find(',') + 1);
    const double v = std::stod(lines[1].substr(c1 + 1));
    EXPECT_EQ(v, f.at(0, 0));
}

TEST(Export, JsonRoundTrip) {
    GridSpec g = default_grid(kB);
    g.nu = 7;
    g.nv = 5;
    const auto f = field(kB, -4, g);
    std::ostringstream os;
    export_grid(f, GridFormat::json, os);
    const auto doc = nlohmann::json::parse(os.str());
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["knot"], "B");
    ASSERT_EQ(doc["value"].size(), 5u);
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const auto& x = doc["value"][j][i];
            if (f.is_masked(i, j)) {
                EXPECT_TRUE(x.is_null());
            } else {
                EXPECT_EQ(x.get<double>(), f.at(i, j));
            }
        }
}
