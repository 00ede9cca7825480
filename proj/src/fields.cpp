#include "siegel/fields.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace siegel {

// ---------------------------------------------------------------------------
// Arithmetic in F_p and in F_p[x] (coefficient vectors, ascending degree)
// ---------------------------------------------------------------------------

namespace {

long mod_p(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

long inv_mod_p(long a, long p) {
    // extended Euclid
    long t = 0, new_t = 1, r = p, new_r = mod_p(a, p);
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DivisionByZero("element not invertible mod p");
    return mod_p(t, p);
}

using FpPoly = std::vector<long>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        long v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = mod_p(v, p);
    }
    fp_trim(r);
    return r;
}

FpPoly fp_scale(const FpPoly& a, long c, long p) {
    FpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] * c, p);
    fp_trim(r);
    return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
    fp_trim(r);
    return r;
}

// remainder of a modulo monic b
FpPoly fp_rem(FpPoly a, const FpPoly& b, long p) {
    fp_trim(a);
    long lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        long c = mod_p(a.back() * lead_inv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = mod_p(a[shift + i] - c * b[i], p);
        fp_trim(a);
    }
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = fp_scale(a, inv_mod_p(a.back(), p), p);
    return a;
}

// x^n mod f
FpPoly fp_pow_x(mpz_class n, const FpPoly& f, long p) {
    FpPoly result{1};
    FpPoly base = fp_rem(FpPoly{0, 1}, f, p);
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = fp_rem(fp_mul(result, base, p), f, p);
        base = fp_rem(fp_mul(base, base, p), f, p);
        n /= 2;
    }
    return result;
}

bool fp_irreducible(const FpPoly& f, long p) {
    int e = static_cast<int>(f.size()) - 1;
    if (e < 1) return false;
    if (e == 1) return true;
    mpz_class q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    // x^(p^e) == x mod f
    FpPoly xq = fp_pow_x(q, f, p);
    FpPoly x = fp_rem(FpPoly{0, 1}, f, p);
    if (xq != x) return false;
    // gcd(x^(p^(e/l)) - x, f) = 1 for every prime l | e
    for (int l = 2; l <= e; ++l) {
        if (e % l != 0) continue;
        bool is_prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) is_prime = false;
        if (!is_prime) continue;
        mpz_class qe = 1;
        for (int i = 0; i < e / l; ++i) qe *= p;
        FpPoly g = fp_pow_x(qe, f, p);
        // g - x
        FpPoly diff = fp_add(g, fp_scale(x, p - 1, p), p);
        if (!(fp_gcd(diff, f, p) == FpPoly{1})) return false;
    }
    return true;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

FieldPtr FieldSpec::rationals() {
    static FieldPtr instance = [] {
        auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
        s->kind = FieldKind::Rationals;
        return FieldPtr(s);
    }();
    return instance;
}

FieldPtr FieldSpec::finite(long p, std::vector<long> modulus) {
    if (!is_prime_long(p)) throw BadFieldSpec("finite field characteristic must be prime");
    for (auto& c : modulus) c = mod_p(c, p);
    fp_trim(modulus);
    int e = static_cast<int>(modulus.size()) - 1;
    if (e < 1) throw BadFieldSpec("modulus must have degree >= 1");
    if (modulus.back() != 1) throw BadFieldSpec("modulus must be monic");
    if (!fp_irreducible(modulus, p)) throw BadFieldSpec("modulus is reducible over F_p");
    auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
    s->kind = FieldKind::Finite;
    s->p = p;
    s->e = e;
    s->modulus = std::move(modulus);
    return s;
}

FieldPtr FieldSpec::finite(long p, int e) {
    if (!is_prime_long(p)) throw BadFieldSpec("finite field characteristic must be prime");
    if (e < 1) throw BadFieldSpec("extension degree must be >= 1");
    if (e == 1) return finite(p, std::vector<long>{0, 1});
    // deterministic default: the lexicographically smallest monic irreducible,
    // scanning lower coefficients as little-endian digits
    mpz_class count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (mpz_class idx = 0; idx < count; ++idx) {
        std::vector<long> mod(e + 1, 0);
        mpz_class t = idx;
        for (int i = 0; i < e; ++i) {
            mpz_class digit = t % p;
            mod[i] = digit.get_si();
            t /= p;
        }
        mod[e] = 1;
        if (fp_irreducible(mod, p)) return finite(p, mod);
    }
    throw BadFieldSpec("no irreducible modulus found");  // unreachable
}

FieldPtr FieldSpec::ratfunc(FieldPtr base, std::string var) {
    if (!base) throw BadFieldSpec("ratfunc base missing");
    if (var.empty()) throw BadFieldSpec("ratfunc variable name empty");
    if (base->kind == FieldKind::RatFunc && base->var == var)
        throw BadFieldSpec("ratfunc base already uses variable " + var);
    if (base->kind == FieldKind::Finite && var == "x")
        throw BadFieldSpec("variable name x is reserved for the finite-field generator");
    auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
    s->kind = FieldKind::RatFunc;
    s->base = std::move(base);
    s->var = std::move(var);
    return s;
}

bool FieldSpec::same(const FieldSpec& o) const {
    if (this == &o) return true;
    if (kind != o.kind) return false;
    switch (kind) {
        case FieldKind::Rationals:
            return true;
        case FieldKind::Finite:
            return p == o.p && e == o.e && modulus == o.modulus;
        case FieldKind::RatFunc:
            return var == o.var && base->same(*o.base);
    }
    return false;
}

std::string FieldSpec::describe() const {
    switch (kind) {
        case FieldKind::Rationals:
            return "Q";
        case FieldKind::Finite:
            if (e == 1) return "F_" + std::to_string(p);
            return "F_" + std::to_string(p) + "^" + std::to_string(e);
        case FieldKind::RatFunc:
            return base->describe() + "(" + var + ")";
    }
    return "?";
}

long FieldSpec::characteristic() const {
    switch (kind) {
        case FieldKind::Rationals:
            return 0;
        case FieldKind::Finite:
            return p;
        case FieldKind::RatFunc:
            return base->characteristic();
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<FieldValue> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) require_same(field_, c.spec());
    trim();
}

Poly Poly::zero(FieldPtr field) { return Poly(std::move(field)); }

Poly Poly::one(FieldPtr field) {
    Poly r(field);
    r.coeffs_.push_back(FieldValue::one(field));
    return r;
}

Poly Poly::monomial(FieldPtr field, const FieldValue& c, int degree) {
    Poly r(std::move(field));
    if (c.is_zero()) return r;
    r.coeffs_.assign(degree, FieldValue::zero(r.field_));
    r.coeffs_.push_back(c);
    return r;
}

bool Poly::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

FieldValue Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return FieldValue::zero(field_);
    return coeffs_[i];
}

const FieldValue& Poly::leading() const {
    if (coeffs_.empty()) throw Error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    require_same(field_, o.field_);
    Poly r(field_);
    size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    r.coeffs_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.coeffs_.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(field_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_same(field_, o.field_);
    if (is_zero() || o.is_zero()) return zero(field_);
    Poly r(field_);
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, FieldValue::zero(field_));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
    r.trim();
    return r;
}

bool Poly::operator==(const Poly& o) const {
    return field_->same(*o.field_) && coeffs_ == o.coeffs_;
}

Poly Poly::scaled(const FieldValue& c) const {
    if (c.is_zero()) return zero(field_);
    Poly r(field_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& a : coeffs_) r.coeffs_.push_back(a * c);
    r.trim();
    return r;
}

Poly Poly::shifted_up(int k) const {
    if (is_zero()) return *this;
    Poly r(field_);
    r.coeffs_.assign(k, FieldValue::zero(field_));
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
}

FieldValue Poly::eval(const FieldValue& at) const {
    FieldValue acc = FieldValue::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    require_same(a.field_, b.field_);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly q = zero(a.field_);
    Poly r = a;
    FieldValue lead_inv = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        FieldValue c = r.leading() * lead_inv;
        q = q + monomial(a.field_, c, shift);
        r = r - b.scaled(c).shifted_up(shift);
    }
    return {q, r};
}

namespace {

// Primitive pseudo-remainder sequence for polynomials with rational
// coefficients: clearing denominators and stripping contents after every
// pseudo-division keeps the integer coefficients from exploding the way the
// plain monic Euclidean algorithm does over Q.
using ZPoly = std::vector<mpz_class>;

void z_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly to_integer_poly(const Poly& p) {
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) {
        const mpq_class& q = c.rational_payload();
        mpz_class den = q.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    ZPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        const mpq_class& q = c.rational_payload();
        out.push_back(q.get_num() * (lcm / q.get_den()));
    }
    return out;
}

void make_primitive(ZPoly& p) {
    z_trim(p);
    if (p.empty()) return;
    mpz_class content = 0;
    for (const auto& c : p) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (p.back() < 0) content = -content;
    for (auto& c : p) c /= content;
}

// R <- lc(B) * R - lc(R) * x^(deg R - deg B) * B, iterated; integral throughout
ZPoly pseudo_rem(ZPoly R, const ZPoly& B) {
    z_trim(R);
    while (R.size() >= B.size()) {
        mpz_class lead = R.back();
        size_t shift = R.size() - B.size();
        for (auto& c : R) c *= B.back();
        for (size_t i = 0; i < B.size(); ++i) R[shift + i] -= lead * B[i];
        z_trim(R);
    }
    return R;
}

Poly gcd_primitive_prs(const Poly& a, const Poly& b) {
    ZPoly A = to_integer_poly(a), B = to_integer_poly(b);
    make_primitive(A);
    make_primitive(B);
    if (A.size() < B.size()) std::swap(A, B);
    while (!B.empty()) {
        ZPoly R = pseudo_rem(A, B);
        make_primitive(R);
        A = std::move(B);
        B = std::move(R);
    }
    std::vector<FieldValue> coeffs;
    coeffs.reserve(A.size());
    for (const auto& c : A) coeffs.push_back(FieldValue::integer(a.field(), c));
    return Poly(a.field(), std::move(coeffs)).monic();
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    if (a.field()->kind == FieldKind::Rationals) return gcd_primitive_prs(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divrem(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::vector<FieldValue> Poly::taylor_at(const FieldValue& at) const {
    // repeated synthetic division by (X - at); valid in any characteristic
    std::vector<FieldValue> out;
    std::vector<FieldValue> work = coeffs_;
    size_t n = work.size();
    for (size_t round = 0; round < n; ++round) {
        // divide work by (X - at): remainder is the next Taylor coefficient
        FieldValue carry = FieldValue::zero(field_);
        for (size_t i = work.size(); i-- > round;) {
            FieldValue v = work[i] + carry * at;
            carry = v;
            work[i] = v;
        }
        out.push_back(work[round]);
        // quotient now occupies positions round+1..end
    }
    return out;
}

// ---------------------------------------------------------------------------
// FieldValue
// ---------------------------------------------------------------------------


FieldValue FieldValue::zero(const FieldPtr& f) { return integer(f, 0); }
FieldValue FieldValue::one(const FieldPtr& f) { return integer(f, 1); }

FieldValue FieldValue::integer(const FieldPtr& f, long v) { return integer(f, mpz_class(v)); }

FieldValue FieldValue::integer(const FieldPtr& f, const mpz_class& v) {
    switch (f->kind) {
        case FieldKind::Rationals:
            return FieldValue(f, mpq_class(v));
        case FieldKind::Finite: {
            mpz_class r = v % f->p;
            if (r < 0) r += f->p;
            FinitePayload c(f->e, 0);
            c[0] = r.get_si();
            return FieldValue(f, std::move(c));
        }
        case FieldKind::RatFunc: {
            FieldValue b = integer(f->base, v);
            Poly num(f->base);
            if (!b.is_zero()) num = Poly(f->base, {b});
            return from_ratfunc(f, std::move(num), Poly::one(f->base));
        }
    }
    throw Error("bad field kind");
}

FieldValue FieldValue::rational(const FieldPtr& f, const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    if (f->kind == FieldKind::Rationals) {
        mpq_class q(num, den);
        q.canonicalize();
        return FieldValue(f, std::move(q));
    }
    return integer(f, num) / integer(f, den);
}

FieldValue FieldValue::generator(const FieldPtr& f) {
    switch (f->kind) {
        case FieldKind::Rationals:
            throw BadFieldSpec("rationals have no generator");
        case FieldKind::Finite: {
            if (f->e == 1) throw BadFieldSpec("prime field has no generator x");
            FinitePayload c(f->e, 0);
            c[1] = 1;
            return FieldValue(f, std::move(c));
        }
        case FieldKind::RatFunc:
            return from_ratfunc(f, Poly::monomial(f->base, one(f->base), 1), Poly::one(f->base));
    }
    throw Error("bad field kind");
}

FieldValue FieldValue::from_finite(const FieldPtr& f, FinitePayload coeffs) {
    if (f->kind != FieldKind::Finite) throw BadFieldSpec("from_finite on a non-finite field");
    for (auto& c : coeffs) c = mod_p(c, f->p);
    fp_trim(coeffs);
    if (static_cast<int>(coeffs.size()) > f->e) coeffs = fp_rem(std::move(coeffs), f->modulus, f->p);
    coeffs.resize(f->e, 0);
    return FieldValue(f, std::move(coeffs));
}

FieldValue FieldValue::from_ratfunc(const FieldPtr& f, Poly num, Poly den) {
    if (f->kind != FieldKind::RatFunc) throw BadFieldSpec("from_ratfunc on a non-ratfunc field");
    require_same(f->base, num.field());
    require_same(f->base, den.field());
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) {
        num = Poly::zero(f->base);
        den = Poly::one(f->base);
    } else {
        if (!(den.is_one())) {
            Poly g = Poly::gcd(num, den);
            if (!g.is_one()) {
                num = Poly::divrem(num, g).first;
                den = Poly::divrem(den, g).first;
            }
        }
        if (!den.leading().is_one()) {
            FieldValue lead_inv = den.leading().inv();
            num = num.scaled(lead_inv);
            den = den.scaled(lead_inv);
        }
    }
    auto data = std::make_shared<RatFuncData>(RatFuncData{std::move(num), std::move(den)});
    return FieldValue(f, RatFuncPayload(std::move(data)));
}

FieldValue FieldValue::embed(const FieldValue& v, const FieldPtr& into) {
    if (into->same(*v.spec())) return v;
    if (into->kind != FieldKind::RatFunc)
        throw MixedFields("cannot embed " + v.spec()->describe() + " into " + into->describe());
    FieldValue b = embed(v, into->base);
    Poly num(into->base);
    if (!b.is_zero()) num = Poly(into->base, {b});
    return from_ratfunc(into, std::move(num), Poly::one(into->base));
}

const mpq_class& FieldValue::rational_payload() const { return std::get<mpq_class>(payload_); }
const FieldValue::FinitePayload& FieldValue::finite_payload() const {
    return std::get<FinitePayload>(payload_);
}
const RatFuncData& FieldValue::ratfunc_payload() const {
    return *std::get<RatFuncPayload>(payload_);
}

bool FieldValue::is_zero() const {
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return rational_payload() == 0;
        case FieldKind::Finite: {
            for (long c : finite_payload())
                if (c != 0) return false;
            return true;
        }
        case FieldKind::RatFunc:
            return ratfunc_payload().num.is_zero();
    }
    return false;
}

bool FieldValue::is_one() const {
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return rational_payload() == 1;
        case FieldKind::Finite: {
            const auto& c = finite_payload();
            if (c.empty() || c[0] != 1) return false;
            for (size_t i = 1; i < c.size(); ++i)
                if (c[i] != 0) return false;
            return true;
        }
        case FieldKind::RatFunc: {
            const auto& r = ratfunc_payload();
            return r.num.is_one() && r.den.is_one();
        }
    }
    return false;
}

FieldValue FieldValue::operator+(const FieldValue& o) const {
    require_same(spec_, o.spec_);
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return FieldValue(spec_, mpq_class(rational_payload() + o.rational_payload()));
        case FieldKind::Finite: {
            FinitePayload r = finite_payload();
            const auto& b = o.finite_payload();
            for (size_t i = 0; i < r.size(); ++i) r[i] = mod_p(r[i] + b[i], spec_->p);
            return FieldValue(spec_, std::move(r));
        }
        case FieldKind::RatFunc: {
            const auto& a = ratfunc_payload();
            const auto& b = o.ratfunc_payload();
            return from_ratfunc(spec_, a.num * b.den + b.num * a.den, a.den * b.den);
        }
    }
    throw Error("bad field kind");
}

FieldValue FieldValue::operator-() const {
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return FieldValue(spec_, mpq_class(-rational_payload()));
        case FieldKind::Finite: {
            FinitePayload r = finite_payload();
            for (auto& c : r) c = mod_p(-c, spec_->p);
            return FieldValue(spec_, std::move(r));
        }
        case FieldKind::RatFunc: {
            // negation preserves canonical form; skip the gcd pass
            const auto& a = ratfunc_payload();
            auto data = std::make_shared<RatFuncData>(RatFuncData{-a.num, a.den});
            return FieldValue(spec_, RatFuncPayload(std::move(data)));
        }
    }
    throw Error("bad field kind");
}

FieldValue FieldValue::operator-(const FieldValue& o) const { return *this + (-o); }

FieldValue FieldValue::operator*(const FieldValue& o) const {
    require_same(spec_, o.spec_);
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return FieldValue(spec_, mpq_class(rational_payload() * o.rational_payload()));
        case FieldKind::Finite: {
            FpPoly prod = fp_mul(finite_payload(), o.finite_payload(), spec_->p);
            prod = fp_rem(std::move(prod), spec_->modulus, spec_->p);
            prod.resize(spec_->e, 0);
            return FieldValue(spec_, std::move(prod));
        }
        case FieldKind::RatFunc: {
            const auto& a = ratfunc_payload();
            const auto& b = o.ratfunc_payload();
            return from_ratfunc(spec_, a.num * b.num, a.den * b.den);
        }
    }
    throw Error("bad field kind");
}

FieldValue FieldValue::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + spec_->describe());
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return FieldValue(spec_, mpq_class(1 / rational_payload()));
        case FieldKind::Finite: {
            // extended Euclid in F_p[x] against the modulus
            long p = spec_->p;
            FpPoly r0 = spec_->modulus, r1 = finite_payload();
            fp_trim(r1);
            FpPoly t0, t1{1};
            while (!r1.empty()) {
                auto [q, rem] = [&] {
                    // divide r0 by r1
                    FpPoly quot, rest = r0;
                    long li = inv_mod_p(r1.back(), p);
                    fp_trim(rest);
                    while (rest.size() >= r1.size()) {
                        long c = mod_p(rest.back() * li, p);
                        size_t shift = rest.size() - r1.size();
                        FpPoly mono(shift + 1, 0);
                        mono[shift] = c;
                        quot = fp_add(quot, mono, p);
                        for (size_t i = 0; i < r1.size(); ++i)
                            rest[shift + i] = mod_p(rest[shift + i] - c * r1[i], p);
                        fp_trim(rest);
                    }
                    return std::pair<FpPoly, FpPoly>(quot, rest);
                }();
                FpPoly t2 = fp_add(t0, fp_scale(fp_mul(q, t1, p), p - 1, p), p);
                r0 = std::move(r1);
                r1 = std::move(rem);
                t0 = std::move(t1);
                t1 = std::move(t2);
            }
            // r0 = gcd; must be a nonzero constant
            if (r0.size() != 1) throw DivisionByZero("element not invertible");
            FpPoly res = fp_scale(t0, inv_mod_p(r0[0], p), p);
            res.resize(spec_->e, 0);
            return FieldValue(spec_, std::move(res));
        }
        case FieldKind::RatFunc: {
            const auto& a = ratfunc_payload();
            return from_ratfunc(spec_, a.den, a.num);
        }
    }
    throw Error("bad field kind");
}

FieldValue FieldValue::operator/(const FieldValue& o) const { return *this * o.inv(); }

FieldValue FieldValue::pow(long n) const {
    if (n < 0) return inv().pow(-n);
    FieldValue acc = one(spec_);
    FieldValue base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool FieldValue::operator==(const FieldValue& o) const {
    if (!spec_->same(*o.spec_)) return false;
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return rational_payload() == o.rational_payload();
        case FieldKind::Finite:
            return finite_payload() == o.finite_payload();
        case FieldKind::RatFunc: {
            const auto& a = ratfunc_payload();
            const auto& b = o.ratfunc_payload();
            return a.num == b.num && a.den == b.den;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

bool needs_parens(const std::string& s) {
    for (size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == '+' || c == '-' || c == '*' || c == '/') return true;
    }
    return false;
}

}  // namespace

std::string poly_to_string(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        FieldValue c = p.coeff(d);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && !needs_parens(cs)) {
            negated = true;
            cs = cs.substr(1);
        }
        if (!out.empty())
            out += negated ? "-" : "+";
        else if (negated)
            out += "-";
        std::string term;
        if (d == 0) {
            term = needs_parens(cs) ? "(" + cs + ")" : cs;
        } else {
            std::string vp = (d == 1) ? var : var + "^" + std::to_string(d);
            if (c.is_one() && !negated)
                term = vp;
            else if (cs == "1" && negated)
                term = vp;
            else
                term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + vp;
        }
        out += term;
    }
    return out;
}

std::string FieldValue::str() const {
    switch (spec_->kind) {
        case FieldKind::Rationals:
            return rational_payload().get_str();
        case FieldKind::Finite: {
            // polynomial in x with integer coefficients
            const auto& c = finite_payload();
            std::string out;
            for (int d = spec_->e - 1; d >= 0; --d) {
                if (c[d] == 0) continue;
                if (!out.empty()) out += "+";
                if (d == 0)
                    out += std::to_string(c[d]);
                else {
                    std::string vp = (d == 1) ? "x" : "x^" + std::to_string(d);
                    out += (c[d] == 1) ? vp : std::to_string(c[d]) + "*" + vp;
                }
            }
            return out.empty() ? "0" : out;
        }
        case FieldKind::RatFunc: {
            const auto& r = ratfunc_payload();
            std::string ns = poly_to_string(r.num, spec_->var);
            if (r.den.is_one()) return ns;
            std::string ds = poly_to_string(r.den, spec_->var);
            std::string left = needs_parens(ns) ? "(" + ns + ")" : ns;
            std::string right =
                (needs_parens(ds) || ds.find('*') != std::string::npos || ds.find('^') != std::string::npos)
                    ? "(" + ds + ")"
                    : ds;
            return left + "/" + right;
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Expression parsing
// ---------------------------------------------------------------------------

namespace {

struct Tokenizer {
    std::string text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    mpz_class read_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected integer at position " + std::to_string(pos));
        return mpz_class(text.substr(start, pos - start));
    }
    std::string read_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos) throw ParseError("expected identifier at position " + std::to_string(pos));
        return text.substr(start, pos - start);
    }
};

class ExprParser {
public:
    ExprParser(FieldPtr field, const std::string& text) : field_(std::move(field)), tok_{text} {}

    FieldValue parse() {
        FieldValue v = expr();
        if (!tok_.eof()) throw ParseError("trailing input at position " + std::to_string(tok_.pos));
        return v;
    }

private:
    FieldPtr field_;
    Tokenizer tok_;

    FieldValue expr() {
        FieldValue v = (tok_.peek() == '-') ? FieldValue::zero(field_) : term();
        while (true) {
            if (tok_.accept('+'))
                v = v + term();
            else if (tok_.accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    FieldValue term() {
        FieldValue v = factor();
        while (true) {
            if (tok_.accept('*'))
                v = v * factor();
            else if (tok_.accept('/'))
                v = v / factor();
            else
                return v;
        }
    }

    FieldValue factor() {
        if (tok_.accept('-')) return -factor();
        FieldValue v = primary();
        if (tok_.accept('^')) {
            bool neg = tok_.accept('-');
            mpz_class n = tok_.read_integer();
            if (!n.fits_slong_p()) throw ParseError("exponent too large");
            long en = n.get_si();
            v = v.pow(neg ? -en : en);
        }
        return v;
    }

    FieldValue primary() {
        char c = tok_.peek();
        if (c == '(') {
            tok_.accept('(');
            FieldValue v = expr();
            if (!tok_.accept(')')) throw ParseError("missing closing parenthesis");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return FieldValue::integer(field_, tok_.read_integer());
        std::string name = tok_.read_ident();
        return resolve(name);
    }

    FieldValue resolve(const std::string& name) {
        // walk the tower from the top; generators of inner layers embed up
        FieldPtr f = field_;
        while (f) {
            if (f->kind == FieldKind::RatFunc) {
                if (f->var == name) return FieldValue::embed(FieldValue::generator(f), field_);
                f = f->base;
                continue;
            }
            if (f->kind == FieldKind::Finite && f->e > 1 && name == "x")
                return FieldValue::embed(FieldValue::generator(f), field_);
            break;
        }
        throw ParseError("unknown symbol '" + name + "' in field " + field_->describe());
    }
};

}  // namespace

FieldValue parse_value(const FieldPtr& f, const std::string& text) {
    return ExprParser(f, text).parse();
}

}  // namespace siegel
