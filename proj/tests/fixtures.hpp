#pragma once

// Element builders shared by the unit tests.

#include "twoproj/spectral.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace twoproj;

inline Symbol symbol(const char* a, const char* b, const char* c, const char* d) {
    Symbol s;
    s[0][0] = parse_expression(a);
    s[0][1] = parse_expression(b);
    s[1][0] = parse_expression(c);
    s[1][1] = parse_expression(d);
    return s;
}

inline WStarElement element(Symbol s, SpectralModel m, Scalars scalars = {}) {
    return build_element(std::move(scalars), std::move(s), std::move(m));
}

inline SpectralModel atoms(std::vector<double> values) { return SpectralModel::from_atoms(values); }

inline SpectralModel interval(double lo, double hi, MeasureClass mc = MeasureClass::absolutely_continuous) {
    SpectralModel m;
    m.intervals.push_back({lo, hi, mc});
    return m;
}

inline WStarElement skew(SpectralModel m, Scalars scalars = {}) {
    return element(symbol("1", "-sqrt(1/x - 1)", "0", "0"), std::move(m), std::move(scalars));
}

inline WStarElement golden(SpectralModel m, Scalars scalars = {}) {
    return element(symbol("1", "1", "0", "1"), std::move(m), std::move(scalars));
}

// Random polynomial entries of degree <= 2 with complex coefficients.
struct RandomElements {
    std::mt19937 gen;

    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen); }
    double normal() { return std::normal_distribution<double>()(gen); }
    Complex complex() { return {normal(), normal()}; }

    Expr poly() {
        const int degree = std::uniform_int_distribution<int>(0, 2)(gen);
        const Expr x = Expr::variable();
        Expr e = Expr::constant(complex());
        if (degree >= 1) e = e + Expr::constant(complex()) * x;
        if (degree >= 2) e = e + Expr::constant(complex()) * pow(x, 2);
        return e;
    }

    SpectralModel finite_model(int max_atoms = 6) {
        const int n = std::uniform_int_distribution<int>(1, max_atoms)(gen);
        std::vector<double> v;
        while (static_cast<int>(v.size()) < n) {
            const double c = 0.01 + 0.98 * unit();
            bool ok = true;
            for (double w : v) ok = ok && std::abs(w - c) > 1e-3;
            if (ok) v.push_back(c);
        }
        return SpectralModel::from_atoms(v);
    }

    SpectralModel mixed_model() {
        SpectralModel m = finite_model(3);
        const double lo = 0.05 + 0.4 * unit();
        m.intervals.push_back({lo, lo + 0.1 + 0.4 * unit(), MeasureClass::absolutely_continuous});
        m.limit_points.push_back(0.97);
        return m;
    }

    Scalars scalars() {
        Scalars s;
        for (auto& v : s)
            if (unit() < 0.5) v = complex();
        return s;
    }

    WStarElement element_over(SpectralModel m, Scalars s) {
        Symbol sym;
        for (auto& row : sym)
            for (auto& e : row) e = poly();
        return build_element(std::move(s), std::move(sym), std::move(m));
    }

    WStarElement element(SpectralModel m) { return element_over(std::move(m), scalars()); }
};

} // namespace fixtures
