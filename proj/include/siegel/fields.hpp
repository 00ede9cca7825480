#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace siegel {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MixedFields : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct BadFieldSpec : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

enum class FieldKind { Rationals, Finite, RatFunc };

/// Description of an exact coefficient field: the rationals, a finite field
/// F_{p^e} = F_p[x]/(modulus), or rational functions in one variable over a
/// base field. Specs are immutable and shared; values carry a pointer to
/// their spec.
class FieldSpec {
public:
    FieldKind kind;

    // Finite fields. `modulus` is monic of degree e, coefficients in [0, p)
    // listed by ascending degree.
    long p = 0;
    int e = 1;
    std::vector<long> modulus;

    // Rational functions.
    FieldPtr base;
    std::string var;

    static FieldPtr rationals();
    static FieldPtr finite(long p, int e = 1);
    static FieldPtr finite(long p, std::vector<long> modulus);
    static FieldPtr ratfunc(FieldPtr base, std::string var);

    bool same(const FieldSpec& other) const;
    std::string describe() const;

    /// Field characteristic (0 for rationals and anything built over them).
    long characteristic() const;

private:
    FieldSpec() = default;
};

inline void require_same(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() != b.get() && !a->same(*b))
        throw MixedFields("operands live in different fields: " + a->describe() + " vs " +
                          b->describe());
}

// ---------------------------------------------------------------------------
// FieldValue and Poly
// ---------------------------------------------------------------------------

class FieldValue;

/// Dense univariate polynomial over a field, coefficients by ascending
/// degree, trailing zeros trimmed. The indeterminate is anonymous: the same
/// type serves rational-function layers (variable theta, T, ...) and
/// polynomials in the nilpotent symbol N.
class Poly {
public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<FieldValue> coeffs);

    static Poly zero(FieldPtr field);
    static Poly one(FieldPtr field);
    static Poly monomial(FieldPtr field, const FieldValue& c, int degree);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<FieldValue>& coeffs() const { return coeffs_; }
    FieldValue coeff(int i) const;  // 0 outside range
    const FieldValue& leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const FieldValue& c) const;
    Poly shifted_up(int k) const;  // multiply by variable^k
    Poly monic() const;
    FieldValue eval(const FieldValue& at) const;

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    /// Monic gcd via the Euclidean algorithm; gcd(0,0) = 0.
    static Poly gcd(const Poly& a, const Poly& b);

    /// Coefficients of the expansion of p(X) in powers of (X - at),
    /// ascending, length degree+1 (empty for the zero polynomial).
    std::vector<FieldValue> taylor_at(const FieldValue& at) const;

    void trim();

private:
    FieldPtr field_;
    std::vector<FieldValue> coeffs_;
};

/// Canonical rational function: num/den with den monic and gcd(num, den) = 1.
struct RatFuncData {
    Poly num;
    Poly den;
};

/// Element of an exact field, always in canonical form so that equality is
/// structural: reduced fractions, reduced residues, coprime num/den with
/// monic denominator.
class FieldValue {
public:
    using FinitePayload = std::vector<long>;  // length e, entries in [0, p)
    using RatFuncPayload = std::shared_ptr<const RatFuncData>;

    static FieldValue zero(const FieldPtr& f);
    static FieldValue one(const FieldPtr& f);
    static FieldValue integer(const FieldPtr& f, long v);
    static FieldValue integer(const FieldPtr& f, const mpz_class& v);
    static FieldValue rational(const FieldPtr& f, const mpz_class& num, const mpz_class& den);
    /// The generator of the top layer: theta/T/... for ratfunc fields, x for
    /// finite fields with e > 1.
    static FieldValue generator(const FieldPtr& f);
    static FieldValue from_finite(const FieldPtr& f, FinitePayload coeffs);
    static FieldValue from_ratfunc(const FieldPtr& f, Poly num, Poly den);
    /// Embed a value of the base field into a ratfunc field over it (applied
    /// recursively until the specs match).
    static FieldValue embed(const FieldValue& v, const FieldPtr& into);

    const FieldPtr& spec() const { return spec_; }

    bool is_zero() const;
    bool is_one() const;

    FieldValue operator+(const FieldValue& o) const;
    FieldValue operator-(const FieldValue& o) const;
    FieldValue operator*(const FieldValue& o) const;
    FieldValue operator/(const FieldValue& o) const;
    FieldValue operator-() const;
    FieldValue inv() const;
    FieldValue pow(long n) const;

    bool operator==(const FieldValue& o) const;
    bool operator!=(const FieldValue& o) const { return !(*this == o); }

    const mpq_class& rational_payload() const;
    const FinitePayload& finite_payload() const;
    const RatFuncData& ratfunc_payload() const;

    /// Canonical string form (grammar: integers, a/b, polynomials in the
    /// layer variables with ^ * + - and parentheses).
    std::string str() const;

private:
    FieldValue(FieldPtr spec, mpq_class q) : spec_(std::move(spec)), payload_(std::move(q)) {}
    FieldValue(FieldPtr spec, FinitePayload c) : spec_(std::move(spec)), payload_(std::move(c)) {}
    FieldValue(FieldPtr spec, RatFuncPayload r) : spec_(std::move(spec)), payload_(std::move(r)) {}

    FieldPtr spec_;
    std::variant<mpq_class, FinitePayload, RatFuncPayload> payload_;
};

/// Parse a value of field `f` from the canonical expression grammar.
/// Identifiers resolve against the layer variables of `f` (ratfunc variable
/// names and `x` for finite-field generators).
FieldValue parse_value(const FieldPtr& f, const std::string& text);

std::string poly_to_string(const Poly& p, const std::string& var);

}  // namespace siegel
