#include "fixtures.hpp"
#include "oracle.hpp"

#include "twoproj/attain.hpp"
#include "twoproj/error.hpp"
#include "twoproj/skew.hpp"

#include <doctest.h>

#include <cmath>

using namespace twoproj;
using namespace fixtures;

namespace {

bool throws_kind(ErrorKind kind, auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

// Points of sigma(H): atoms, limit points and uniform draws from intervals.
std::vector<double> probes(const SpectralModel& m, std::mt19937& gen, int count) {
    std::vector<double> out;
    for (const auto& a : m.atoms) out.push_back(a.value);
    for (double p : m.limit_points) out.push_back(p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < count && !m.intervals.empty(); ++k) {
        const auto& iv = m.intervals[static_cast<std::size_t>(k) % m.intervals.size()];
        out.push_back(iv.lo + (iv.hi - iv.lo) * unit(gen));
    }
    return out;
}

} // namespace

TEST_CASE("lambda_max: Example 3 models") {
    const Example3 one = example3_model(Example3Variant::one_over_n);
    const MaximizerSet s1 = lambda_max(one.element);
    CHECK(std::abs(s1.value - 1.0) <= 1e-12);
    REQUIRE(s1.points.size() == 1);
    CHECK(s1.points[0].kind == PointKind::limit_point);
    CHECK(s1.points[0].x == 1.0);

    const Example3 two = example3_model(Example3Variant::two_over_n);
    const MaximizerSet s2 = lambda_max(two.element);
    CHECK(std::abs(s2.value - 9.0) <= 1e-12);
    REQUIRE(s2.points.size() == 1);
    CHECK(s2.points[0].kind == PointKind::atom);
    CHECK(std::abs(s2.points[0].x - 0.2) < 1e-15);
}

TEST_CASE("lambda_max: identity symbol on one atom") {
    const MaximizerSet s = lambda_max(element(symbol("1", "0", "0", "1"), atoms({0.5})));
    CHECK(s.value == 1.0);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].x == 0.5);
    CHECK(throws_kind(ErrorKind::EmptyModel, [] { lambda_max(element(symbol("1", "0", "0", "1"), {})); }));
}

TEST_CASE("lambda_max: maxima inside intervals") {
    // psi/2 = |1 - (x - 0.5)^2|^2 peaks at 0.5
    const MaximizerSet interior = lambda_max(element(symbol("1 - (x - 0.5)^2", "0", "0", "0"), interval(0.2, 0.9)));
    REQUIRE(interior.points.size() == 1);
    CHECK(interior.points[0].kind == PointKind::essential_interior);
    CHECK(std::abs(interior.points[0].x - 0.5) < 1e-6);
    CHECK(std::abs(interior.value - 1.0) < 1e-12);

    const MaximizerSet plateau = lambda_max(element(symbol("1", "0", "0", "0"), interval(0.2, 0.6)));
    REQUIRE(plateau.points.size() == 1);
    CHECK(plateau.points[0].kind == PointKind::interval_plateau);
    CHECK(plateau.points[0].lo == 0.2);
    CHECK(plateau.points[0].hi == 0.6);
}

TEST_CASE("decide_attainment: Example 3 verdicts") {
    const AttainmentVerdict v1 = decide_attainment(example3_model(Example3Variant::one_over_n).element);
    CHECK_FALSE(v1.attained);
    CHECK(v1.clause == Clause::sigma_null);
    CHECK(std::abs(v1.norm - 1.0) <= 1e-12);

    const AttainmentVerdict v2 = decide_attainment(example3_model(Example3Variant::two_over_n).element);
    CHECK(v2.attained);
    CHECK(v2.clause == Clause::sigma_has_mass);
    CHECK(std::abs(v2.norm - 3.0) <= 1e-12);
}

TEST_CASE("decide_attainment: clause (i)") {
    Scalars five;
    at(five, Corner::m01) = 5.0;
    const AttainmentVerdict v = decide_attainment(golden(atoms({0.3}), five));
    CHECK(v.clause == Clause::scalar_dominates);
    CHECK(v.attained);
    CHECK(v.norm == 5.0);
    CHECK(std::abs(v.lambda_max - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-14);

    // a tie goes to clause (i)
    Scalars one;
    at(one, Corner::m00) = 1.0;
    const AttainmentVerdict tie = decide_attainment(element(symbol("1", "0", "0", "1"), interval(0.1, 0.2), one));
    CHECK(tie.clause == Clause::scalar_dominates);

    // scalars beat a non-attaining essential maximum
    Scalars big;
    at(big, Corner::m11) = Complex(0.0, 3.0);
    const AttainmentVerdict dom = decide_attainment(skew(interval(0.3, 0.9), big));
    CHECK(dom.attained);
    CHECK(dom.norm == 3.0);

    // only scalars
    const AttainmentVerdict bare = decide_attainment(element(symbol("0", "0", "0", "0"), {}, big));
    CHECK(bare.clause == Clause::scalar_dominates);
    CHECK(bare.norm == 3.0);
    CHECK(throws_kind(ErrorKind::ValidationError, [] { decide_attainment(element(symbol("0", "0", "0", "0"), {})); }));
}

TEST_CASE("decide_attainment: measure classes") {
    const AttainmentVerdict ac = decide_attainment(element(symbol("1", "0", "0", "0"), interval(0.2, 0.6)));
    CHECK(ac.attained);
    CHECK(ac.clause == Clause::sigma_has_mass);

    CHECK(throws_kind(ErrorKind::IndeterminateMeasure, [] {
        decide_attainment(element(symbol("1", "0", "0", "0"), interval(0.2, 0.6, MeasureClass::unspecified)));
    }));

    // isolated maximizer in an interval carries no mass whatever the class
    for (MeasureClass mc : {MeasureClass::absolutely_continuous, MeasureClass::unspecified}) {
        const AttainmentVerdict v = decide_attainment(skew(interval(0.3, 0.9, mc)));
        CHECK_FALSE(v.attained);
        CHECK(v.clause == Clause::sigma_null);
    }
}

TEST_CASE("kernel_nontrivial") {
    CHECK(kernel_nontrivial(skew(atoms({0.4}))));
    CHECK(kernel_nontrivial(skew(interval(0.3, 0.9))));
    CHECK_FALSE(kernel_nontrivial(element(symbol("1", "0", "0", "1"), atoms({0.4}))));
    CHECK_FALSE(kernel_nontrivial(element(symbol("1", "0", "0", "1"), interval(0.1, 0.9))));

    const Symbol omega_half = symbol("x - 0.5", "0", "0", "1");
    CHECK(kernel_nontrivial(element(omega_half, atoms({0.5}))));
    CHECK_FALSE(kernel_nontrivial(element(omega_half, atoms({0.3, 0.7}))));
    CHECK_FALSE(kernel_nontrivial(element(omega_half, interval(0.3, 0.7))));

    CHECK(throws_kind(ErrorKind::IndeterminateMeasure,
                      [] { kernel_nontrivial(skew(interval(0.3, 0.9, MeasureClass::unspecified))); }));
}

TEST_CASE("is_eigenvalue") {
    const Symbol d = symbol("x", "0", "0", "1 - x");
    CHECK(is_eigenvalue(element(d, atoms({0.3})), 0.3).eigenvalue);
    CHECK(is_eigenvalue(element(d, atoms({0.3})), 0.7).eigenvalue);
    CHECK_FALSE(is_eigenvalue(element(d, atoms({0.3})), 0.5).eigenvalue);
    CHECK_FALSE(is_eigenvalue(element(d, interval(0.4, 0.6)), 0.5).eigenvalue);

    const Symbol id = symbol("1", "0", "0", "1");
    CHECK(is_eigenvalue(element(id, atoms({0.2, 0.8})), 1.0).eigenvalue);
    CHECK_FALSE(is_eigenvalue(element(id, atoms({0.2, 0.8})), 0.0).eigenvalue);
    CHECK(is_eigenvalue(element(id, interval(0.2, 0.8)), 1.0).eigenvalue);

    Scalars s;
    at(s, Corner::m10) = Complex(2.0, -1.0);
    const EigenvalueTest t = is_eigenvalue(element(id, atoms({0.5}), s), Complex(2.0, -1.0));
    CHECK(t.eigenvalue);
    CHECK(t.from_scalars);
    CHECK_FALSE(t.from_symbol);
}

TEST_CASE("property: attainment is shared by A and A*A") {
    RandomElements rnd{std::mt19937(40)};
    for (int trial = 0; trial < 150; ++trial) {
        const WStarElement a = rnd.element(trial % 2 ? rnd.mixed_model() : rnd.finite_model());
        const AttainmentVerdict va = decide_attainment(a);
        const AttainmentVerdict vaa = decide_attainment(multiply(adjoint(a), a));
        CHECK(va.attained == vaa.attained);
        CHECK(std::abs(vaa.norm - va.norm * va.norm) <= 1e-9 * va.norm * va.norm);
    }
}

TEST_CASE("property: finite models always attain") {
    RandomElements rnd{std::mt19937(41)};
    for (int trial = 0; trial < 200; ++trial) CHECK(decide_attainment(rnd.element(rnd.finite_model())).attained);
}

TEST_CASE("property: lambda_max dominates psi/2 on the spectrum") {
    RandomElements rnd{std::mt19937(42)};
    std::mt19937 gen(43);
    for (int trial = 0; trial < 20; ++trial) {
        const WStarElement a = rnd.element(rnd.mixed_model());
        const MaximizerSet s = lambda_max(a);
        REQUIRE_FALSE(s.points.empty());
        double worst = 0.0;
        for (double x : probes(a.model(), gen, 500)) worst = std::max(worst, symbol_at(a, x).psi / 2.0 - s.value);
        CHECK(worst <= 1e-10 * (1.0 + s.value));
        for (const auto& p : s.points)
            if (p.kind != PointKind::interval_plateau)
                CHECK(std::abs(symbol_at(a, p.x).psi / 2.0 - s.value) <= plateau_tolerance(s.value));
    }
}

TEST_CASE("property: norm is wired to lambda_max") {
    RandomElements rnd{std::mt19937(44)};
    for (int trial = 0; trial < 100; ++trial) {
        const WStarElement a = rnd.element(trial % 2 ? rnd.mixed_model() : rnd.finite_model());
        const double expected = std::max(a.max_scalar_modulus().value_or(0.0), std::sqrt(lambda_max(a).value));
        CHECK(norm(a) == expected);
        const AttainmentVerdict v = decide_attainment(a);
        CHECK(v.norm == expected);
        if (v.clause == Clause::scalar_dominates) CHECK(v.norm == *a.max_scalar_modulus());
        CHECK(v.attained == (v.clause != Clause::sigma_null));
    }
}

TEST_CASE("property: the skew symbol peaks at the bottom of the spectrum") {
    RandomElements rnd{std::mt19937(45)};
    for (int trial = 0; trial < 100; ++trial) {
        const SpectralModel m = trial % 2 ? rnd.mixed_model() : rnd.finite_model();
        const MaximizerSet s = lambda_max(skew(m));
        REQUIRE(s.points.size() == 1);
        CHECK(s.points[0].x == m.min_point());
        CHECK(std::abs(s.value - 1.0 / m.min_point()) <= 1e-12 * s.value);
    }
}
