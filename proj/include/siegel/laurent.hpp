#pragma once

#include "siegel/fields.hpp"

namespace siegel {

struct ZeroDenominatorIdentically : DivisionByZero {
    using DivisionByZero::DivisionByZero;
};

/// Truncated Laurent series in the nilpotent symbol N over a coefficient
/// field. Coefficients are stored for exponents -kappa .. truncation, where
/// kappa >= 0 is the pole order.
class LaurentSeries {
public:
    LaurentSeries(FieldPtr field, int kappa, int truncation, std::vector<FieldValue> coeffs);

    static LaurentSeries zero(FieldPtr field, int truncation);

    const FieldPtr& field() const { return field_; }
    int kappa() const { return kappa_; }
    int truncation() const { return truncation_; }

    FieldValue coeff(int exponent) const;  // zero outside the window
    bool is_zero() const;
    /// Exponent of the first nonzero retained coefficient; truncation+1 if none.
    int leading_exponent() const;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    /// Product, truncated to the largest exponent both factors determine.
    LaurentSeries operator*(const LaurentSeries& o) const;

    /// Equality of all coefficients up to and including `order`.
    bool agrees_through(const LaurentSeries& o, int order) const;

private:
    FieldPtr field_;
    int kappa_ = 0;
    int truncation_ = 0;
    std::vector<FieldValue> coeffs_;  // index 0 holds exponent -kappa
};

/// Expansion of a rational function f of one variable around the point `at`
/// of the coefficient field: substitute variable = at + N and expand in
/// powers of N through exponent `order`. f must belong to a ratfunc field;
/// the result's coefficients live in its base.
LaurentSeries laurent_expand(const FieldValue& f, const FieldValue& at, int order);

/// The theta-shift: expansion at the generator of the base field (theta),
/// i.e. the substitution T = theta + N. Requires f in K(T) with K itself a
/// rational-function field in theta.
LaurentSeries theta_shift(const FieldValue& f, int order);

}  // namespace siegel
