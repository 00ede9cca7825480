#include "siegel/generate.hpp"

#include <algorithm>
#include <limits>

namespace siegel {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw Error("below(0)");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

long Rng::range(long lo, long hi) {
    if (hi < lo) throw Error("empty range");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rng Rng::fork(std::uint64_t stream) const {
    Rng copy = *this;
    std::uint64_t mix = copy.engine_() ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return Rng(mix);
}

FieldValue random_value(Rng& rng, const FieldPtr& field, const RandomValueOptions& opts) {
    switch (field->kind) {
        case FieldKind::Rationals: {
            long num = rng.range(-opts.coeff_bound, opts.coeff_bound);
            long den = rng.range(1, opts.coeff_bound);
            return FieldValue::rational(field, num, den);
        }
        case FieldKind::Finite: {
            FieldValue::FinitePayload c(static_cast<size_t>(field->e));
            for (auto& v : c) v = rng.range(0, field->p - 1);
            return FieldValue::from_finite(field, std::move(c));
        }
        case FieldKind::RatFunc: {
            RandomValueOptions base_opts = opts;
            base_opts.den_percent = 0;  // keep inner layers polynomialish
            auto random_poly = [&](int deg_bound, bool nonzero) {
                std::vector<FieldValue> cs;
                int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(deg_bound) + 1));
                for (int i = 0; i <= deg; ++i) cs.push_back(random_value(rng, field->base, base_opts));
                Poly p(field->base, std::move(cs));
                if (nonzero && p.is_zero()) p = Poly::one(field->base);
                return p;
            };
            Poly num = random_poly(opts.num_degree, false);
            Poly den = Poly::one(field->base);
            if (opts.den_percent > 0 && rng.below(100) < static_cast<std::uint64_t>(opts.den_percent))
                den = random_poly(opts.den_degree, true);
            return FieldValue::from_ratfunc(field, std::move(num), std::move(den));
        }
    }
    throw Error("bad field kind");
}

Mat random_mat(Rng& rng, const FieldPtr& field, int rows, int cols, const RandomValueOptions& opts) {
    Mat m(field, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, random_value(rng, field, opts));
    return m;
}

std::vector<int> random_shape(Rng& rng, int m, int r) {
    std::vector<int> k(static_cast<size_t>(m + 1), 0);
    for (int ball = 0; ball < r; ++ball) ++k[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(m + 1)))];
    return k;
}

SiegelObject random_siegel(Rng& rng, const FieldPtr& field, int m, const std::vector<int>& k,
                           const RandomValueOptions& opts) {
    SiegelObject S(field, m, k);
    for (const TetraIndex& t : tetra_indices(m))
        S.set(t.u, t.y, t.z, random_mat(rng, field, S.k_at(t.u), S.k_at(t.y), opts));
    return S;
}

PartitionWithZeroes random_partition(Rng& rng, int length, int max_part) {
    std::vector<int> parts(static_cast<size_t>(length));
    for (auto& v : parts) v = static_cast<int>(rng.range(0, max_part));
    std::sort(parts.rbegin(), parts.rend());
    return PartitionWithZeroes(std::move(parts));
}

JordanData random_lattice_jordan(Rng& rng, int m, int n_max, int r_max) {
    if (n_max < m) throw Error("n_max must allow one block of size m");
    std::vector<int> parts{m};
    int n = m;
    // more blocks while room remains
    while (n < n_max && static_cast<int>(parts.size()) < r_max && rng.below(100) < 70) {
        int part = static_cast<int>(rng.range(1, std::min(static_cast<long>(m), static_cast<long>(n_max - n))));
        parts.push_back(part);
        n += part;
    }
    std::sort(parts.rbegin(), parts.rend());
    int alpha = static_cast<int>(parts.size());
    int r = static_cast<int>(rng.range(alpha, r_max));
    parts.resize(static_cast<size_t>(r), 0);
    return jordan_data(PartitionWithZeroes(std::move(parts)), m);
}

LatticeInstance random_lattice_instance(Rng& rng, const FieldPtr& field, const JordanData& jd,
                                        const RandomValueOptions& opts, int max_retries) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        LatticeInstance L;
        L.field = field;
        L.jordan = jd;
        for (int j = 0; j < jd.r; ++j) L.basis.push_back(random_mat(rng, field, jd.n, 1, opts));
        if (check_condition_31(L)) return L;
    }
    throw SpanFailure("could not generate a basis satisfying the span condition");
}

}  // namespace siegel
