#include "nonext/phi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace nonext {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double horner(const std::vector<double>& c, double q) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i > 0; --i) acc = acc * q + c[i - 1];
    return acc;
}

double horner_derivative(const std::vector<double>& c, double q) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i > 1; --i) {
        acc = acc * q + static_cast<double>(i - 1) * c[i - 1];
    }
    return acc;
}

}  // namespace

PhiSpec builtin_phi(const std::string& name) {
    if (name == "tsallis") {
        return {"tsallis", [](double q) { return q - 1.0; }, [](double) { return 1.0; }};
    }
    if (name == "cubic") {
        return {"cubic",
                [](double q) { return (q - 1.0) * (q * q + 1.0) * 0.5; },
                [](double q) { return (q * q + 1.0) * 0.5 + (q - 1.0) * q; }};
    }
    if (name == "havrda_charvat") {
        // 1 - 2^(1-q) via expm1 so the zero at q = 1 is exact.
        return {"havrda_charvat",
                [](double q) { return -std::expm1((1.0 - q) * std::numbers::ln2); },
                [](double q) { return std::numbers::ln2 * std::exp((1.0 - q) * std::numbers::ln2); }};
    }
    fail(ErrorCode::UnknownPhi, "builtin_phi: no family named '" + name + "'");
}

const std::vector<std::string>& builtin_phi_names() {
    static const std::vector<std::string> names = {"tsallis", "cubic", "havrda_charvat"};
    return names;
}

PhiSpec poly_phi(std::span<const double> coeffs) {
    if (coeffs.empty()) {
        fail(ErrorCode::ParseError, "poly_phi: needs at least one coefficient");
    }
    for (double c : coeffs) {
        if (!std::isfinite(c)) {
            fail(ErrorCode::NonFiniteInput, "poly_phi: coefficient " + fmt(c));
        }
    }
    std::vector<double> c(coeffs.begin(), coeffs.end());
    std::string name = "poly(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) name += ",";
        name += fmt(c[i]);
    }
    name += ")";
    return {std::move(name),
            [c](double q) { return (q - 1.0) * horner(c, q); },
            [c](double q) { return horner(c, q) + (q - 1.0) * horner_derivative(c, q); }};
}

double phi_derivative(const PhiSpec& spec, double q) {
    double h = 1e-6 * std::max(1.0, std::abs(q));
    if (q - h <= 0.0) h = q * 0.5;
    return phi_derivative(spec, q, h);
}

double phi_derivative(const PhiSpec& spec, double q, double h) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        fail(ErrorCode::NonPositiveQ, "phi_derivative: q = " + fmt(q));
    }
    double v;
    if (spec.derivative) {
        v = spec.derivative(q);
    } else {
        if (!(h > 0.0) || q - h <= 0.0) {
            fail(ErrorCode::NonPositiveQ,
                 "phi_derivative: step " + fmt(h) + " leaves (0, inf) at q = " + fmt(q));
        }
        v = (spec.eval(q + h) - spec.eval(q - h)) / (2.0 * h);
    }
    if (!std::isfinite(v)) {
        fail(ErrorCode::NonFinitePhi, "phi_derivative: " + spec.name + " at q = " + fmt(q));
    }
    return v;
}

std::vector<double> default_phi_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 6; ++k) {
        const double d = std::pow(10.0, -k);
        grid.push_back(1.0 - d);
        grid.push_back(1.0 + d);
    }
    const double lo = 0.01, hi = 10.0;
    const int count = 50;
    for (int i = 0; i < count; ++i) {
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) /
                                                  static_cast<double>(count - 1)));
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

namespace {

/// Central difference of eval at q with steps h and h/2; flags disagreement.
struct DiffProbe {
    double coarse;
    double fine;
    bool finite;
};

DiffProbe probe_derivative(const PhiSpec& spec, double q) {
    double h = 1e-6 * std::max(1.0, std::abs(q));
    if (q - h <= 0.0) h = q * 0.5;
    const double d1 = (spec.eval(q + h) - spec.eval(q - h)) / (2.0 * h);
    const double d2 = (spec.eval(q + 0.5 * h) - spec.eval(q - 0.5 * h)) / h;
    return {d1, d2, std::isfinite(d1) && std::isfinite(d2)};
}

}  // namespace

PhiValidationReport validate_phi(const PhiSpec& spec, std::span<const double> q_grid,
                                 double tol) {
    if (q_grid.empty()) fail(ErrorCode::BadGrid, "validate_phi: empty grid");
    double below = std::numeric_limits<double>::infinity();
    double above = std::numeric_limits<double>::infinity();
    for (double q : q_grid) {
        if (!std::isfinite(q) || q <= 0.0) {
            fail(ErrorCode::BadGrid, "validate_phi: grid point " + fmt(q));
        }
        if (q < 1.0) below = std::min(below, 1.0 - q);
        if (q > 1.0) above = std::min(above, q - 1.0);
    }
    if (below > 0.01 || above > 0.01) {
        fail(ErrorCode::BadGrid,
             "validate_phi: grid must straddle q = 1 within 0.01 on both sides");
    }

    PhiValidationReport rep;
    rep.grid.assign(q_grid.begin(), q_grid.end());
    std::sort(rep.grid.begin(), rep.grid.end());

    // Sign: phi < 0 left of 1, phi > 0 right of 1.
    rep.sign.passed = true;
    for (double q : rep.grid) {
        if (q == 1.0) continue;
        const double v = spec.eval(q);
        const bool ok = (q > 1.0) ? v > 0.0 : v < 0.0;
        if (!ok) {
            rep.sign = {false, q, v,
                        "phi(" + fmt(q) + ") = " + fmt(v) + " has the wrong sign"};
            break;
        }
        if (std::abs(v) > std::abs(rep.sign.measured)) {
            rep.sign.witness_q = q;
            rep.sign.measured = v;
        }
    }

    // Differentiability: two-step central differences must agree everywhere.
    rep.differentiable.passed = true;
    for (double q : rep.grid) {
        const DiffProbe probe = probe_derivative(spec, q);
        if (!probe.finite) {
            rep.differentiable = {false, q, probe.coarse,
                                  "derivative probe not finite at q = " + fmt(q)};
            break;
        }
        const double gap =
            std::abs(probe.coarse - probe.fine) / std::max(1.0, std::abs(probe.fine));
        if (gap > tol) {
            rep.differentiable = {false, q, gap,
                                  "derivative estimates disagree by " + fmt(gap) +
                                      " at q = " + fmt(q)};
            break;
        }
        if (gap > rep.differentiable.measured) {
            rep.differentiable.witness_q = q;
            rep.differentiable.measured = gap;
        }
    }

    // Derivative limit: phi'(q) at the nearest grid points on each side of 1
    // must both sit within tol of 1.
    {
        double q_lo = 0.0, q_hi = std::numeric_limits<double>::infinity();
        for (double q : rep.grid) {
            if (q < 1.0 && q > q_lo) q_lo = q;
            if (q > 1.0 && q < q_hi) q_hi = q;
        }
        const double d_lo = phi_derivative(spec, q_lo);
        const double d_hi = phi_derivative(spec, q_hi);
        const double dev_lo = std::abs(d_lo - 1.0);
        const double dev_hi = std::abs(d_hi - 1.0);
        rep.derivative_limit.passed = dev_lo <= tol && dev_hi <= tol;
        rep.derivative_limit.witness_q = dev_lo >= dev_hi ? q_lo : q_hi;
        rep.derivative_limit.measured = 0.5 * (d_lo + d_hi);
        if (!rep.derivative_limit.passed) {
            rep.derivative_limit.note =
                "phi'(q) near q = 1 is " + fmt(rep.derivative_limit.measured) + ", not 1";
        }
    }

    // Zero at one, nonzero elsewhere.
    {
        const double at_one = spec.eval(1.0);
        rep.zero_at_one.witness_q = 1.0;
        rep.zero_at_one.measured = at_one;
        if (!(std::abs(at_one) <= kPhiVanishTol)) {
            rep.zero_at_one.passed = false;
            rep.zero_at_one.note = "phi(1) = " + fmt(at_one) + " does not vanish";
        } else {
            rep.zero_at_one.passed = true;
            for (double q : rep.grid) {
                if (q == 1.0) continue;
                const double v = spec.eval(q);
                if (std::abs(v) <= kPhiVanishTol) {
                    rep.zero_at_one = {false, q, v,
                                       "phi(" + fmt(q) + ") = " + fmt(v) +
                                           " vanishes away from q = 1"};
                    break;
                }
            }
        }
    }

    return rep;
}

}  // namespace nonext
