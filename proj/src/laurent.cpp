#include "siegel/laurent.hpp"

#include <algorithm>

namespace siegel {

LaurentSeries::LaurentSeries(FieldPtr field, int kappa, int truncation,
                             std::vector<FieldValue> coeffs)
    : field_(std::move(field)), kappa_(kappa), truncation_(truncation), coeffs_(std::move(coeffs)) {
    if (kappa_ < 0) throw Error("pole order must be non-negative");
    if (truncation_ < -kappa_) throw Error("truncation below -kappa");
    coeffs_.resize(static_cast<size_t>(truncation_ + kappa_ + 1), FieldValue::zero(field_));
    // normalize: a window whose polar part vanishes entirely has kappa
    // reduced to the pole actually present
    while (kappa_ > 0 && coeffs_.front().is_zero()) {
        coeffs_.erase(coeffs_.begin());
        --kappa_;
    }
}

LaurentSeries LaurentSeries::zero(FieldPtr field, int truncation) {
    return LaurentSeries(field, 0, truncation, {});
}

FieldValue LaurentSeries::coeff(int exponent) const {
    int idx = exponent + kappa_;
    if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return FieldValue::zero(field_);
    return coeffs_[idx];
}

bool LaurentSeries::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

int LaurentSeries::leading_exponent() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return static_cast<int>(i) - kappa_;
    return truncation_ + 1;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    require_same(field_, o.field_);
    int kappa = std::max(kappa_, o.kappa_);
    int trunc = std::min(truncation_, o.truncation_);
    std::vector<FieldValue> c;
    for (int e = -kappa; e <= trunc; ++e) c.push_back(coeff(e) + o.coeff(e));
    return LaurentSeries(field_, kappa, trunc, std::move(c));
}

LaurentSeries LaurentSeries::operator-() const {
    std::vector<FieldValue> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) c.push_back(-v);
    return LaurentSeries(field_, kappa_, truncation_, std::move(c));
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    require_same(field_, o.field_);
    // coefficients above min(t1 + l2, t2 + l1) would need unseen terms
    int l1 = leading_exponent(), l2 = o.leading_exponent();
    int trunc = std::min(truncation_ + l2, o.truncation_ + l1);
    int kappa = std::max(0, -(l1 + l2));
    if (trunc < -kappa) trunc = -kappa;
    std::vector<FieldValue> c(static_cast<size_t>(trunc + kappa + 1), FieldValue::zero(field_));
    for (int e1 = l1; e1 <= truncation_; ++e1) {
        FieldValue a = coeff(e1);
        if (a.is_zero()) continue;
        for (int e2 = l2; e2 <= o.truncation_; ++e2) {
            int e = e1 + e2;
            if (e > trunc) break;
            c[static_cast<size_t>(e + kappa)] = c[static_cast<size_t>(e + kappa)] + a * o.coeff(e2);
        }
    }
    return LaurentSeries(field_, kappa, trunc, std::move(c));
}

bool LaurentSeries::agrees_through(const LaurentSeries& o, int order) const {
    if (!field_->same(*o.field_)) return false;
    if (truncation_ < order || o.truncation_ < order) return false;
    for (int e = -std::max(kappa_, o.kappa_); e <= order; ++e)
        if (coeff(e) != o.coeff(e)) return false;
    return true;
}

LaurentSeries laurent_expand(const FieldValue& f, const FieldValue& at, int order) {
    const FieldPtr& spec = f.spec();
    if (spec->kind != FieldKind::RatFunc)
        throw BadFieldSpec("laurent_expand needs a rational function argument");
    const FieldPtr& K = spec->base;
    require_same(K, at.spec());

    const RatFuncData& rf = f.ratfunc_payload();
    if (rf.den.is_zero()) throw ZeroDenominatorIdentically("denominator is identically zero");
    if (f.is_zero()) return LaurentSeries::zero(K, order);

    std::vector<FieldValue> nt = rf.num.taylor_at(at);
    std::vector<FieldValue> dt = rf.den.taylor_at(at);
    auto first_nonzero = [](const std::vector<FieldValue>& v) {
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) return static_cast<int>(i);
        return static_cast<int>(v.size());
    };
    int w = first_nonzero(nt);
    int v = first_nonzero(dt);
    int lead = w - v;  // exponent of the lowest term of the expansion
    int kappa = std::max(0, -lead);
    if (order < -kappa) throw Error("expansion order below pole order");

    // f(at + N) = N^(w-v) * A(N)/B(N) with B(0) != 0; invert B as a series
    int len = order - lead + 1;  // coefficients of A/B needed
    if (len <= 0) return LaurentSeries(K, kappa, order, {});
    std::vector<FieldValue> A(static_cast<size_t>(len), FieldValue::zero(K));
    std::vector<FieldValue> B(static_cast<size_t>(len), FieldValue::zero(K));
    for (int i = 0; i < len; ++i) {
        if (w + i < static_cast<int>(nt.size())) A[static_cast<size_t>(i)] = nt[static_cast<size_t>(w + i)];
        if (v + i < static_cast<int>(dt.size())) B[static_cast<size_t>(i)] = dt[static_cast<size_t>(v + i)];
    }
    FieldValue b0_inv = B[0].inv();
    std::vector<FieldValue> Q(static_cast<size_t>(len), FieldValue::zero(K));
    for (int i = 0; i < len; ++i) {
        FieldValue acc = A[static_cast<size_t>(i)];
        for (int j = 1; j <= i; ++j)
            acc = acc - B[static_cast<size_t>(j)] * Q[static_cast<size_t>(i - j)];
        Q[static_cast<size_t>(i)] = acc * b0_inv;
    }

    std::vector<FieldValue> coeffs(static_cast<size_t>(order + kappa + 1), FieldValue::zero(K));
    for (int i = 0; i < len; ++i) {
        int e = lead + i;
        if (e >= -kappa && e <= order) coeffs[static_cast<size_t>(e + kappa)] = Q[static_cast<size_t>(i)];
    }
    return LaurentSeries(K, kappa, order, std::move(coeffs));
}

LaurentSeries theta_shift(const FieldValue& f, int order) {
    const FieldPtr& spec = f.spec();
    if (spec->kind != FieldKind::RatFunc)
        throw BadFieldSpec("theta_shift needs a rational function argument");
    if (spec->base->kind != FieldKind::RatFunc)
        throw BadFieldSpec("theta_shift needs a coefficient field containing theta");
    return laurent_expand(f, FieldValue::generator(spec->base), order);
}

}  // namespace siegel
