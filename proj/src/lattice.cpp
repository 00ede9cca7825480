#include "siegel/lattice.hpp"

#include <numeric>

namespace siegel {

Mat make_jordan_matrix(const JordanData& jd, const FieldPtr& field) {
    Mat J(field, jd.n, jd.n);
    int offset = 0;
    for (int part : jd.d.parts) {
        for (int j = 0; j + 1 < part; ++j)
            J.set(offset + j, offset + j + 1, FieldValue::one(field));
        offset += part;
    }
    return J;
}

namespace {

std::vector<Mat> matrix_powers(const Mat& J, int up_to) {
    std::vector<Mat> P{Mat::identity(J.field(), J.rows())};
    for (int i = 1; i <= up_to; ++i) P.push_back(P.back() * J);
    return P;
}

// Columns form a basis in which the nilpotent A takes the canonical upper
// Jordan form with block sizes d (chains built greedily from kernel
// filtration complements).
Mat nilpotent_jordan_basis(const Mat& A, const PartitionWithZeroes& d) {
    const FieldPtr& F = A.field();
    const int n = A.rows();
    int max_h = d.largest();
    std::vector<Mat> powers = matrix_powers(A, max_h);
    std::vector<Mat> kernels;  // kernels[h] = basis of Ker A^h, h = 0..max_h
    for (int h = 0; h <= max_h; ++h) kernels.push_back(kernel_basis(powers[static_cast<size_t>(h)]));

    std::vector<std::pair<Mat, int>> tops;  // (top vector, height)
    for (int h = max_h; h >= 1; --h) {
        int mult = 0;
        for (int part : d.parts)
            if (part == h) ++mult;
        if (mult == 0) continue;
        EchelonBasis E(F, n);
        const Mat& Klow = kernels[static_cast<size_t>(h - 1)];
        for (int j = 0; j < Klow.cols(); ++j)
            if (!E.try_add(Klow.col(j)))
                throw InternalRankMismatch("kernel basis degenerate in Jordan chain search");
        for (const auto& [t, th] : tops)
            if (!E.try_add(powers[static_cast<size_t>(th - h)] * t))
                throw InternalRankMismatch("chain representatives degenerate in Jordan chain search");
        const Mat& Kh = kernels[static_cast<size_t>(h)];
        int found = 0;
        for (int j = 0; j < Kh.cols() && found < mult; ++j)
            if (E.try_add(Kh.col(j))) {
                tops.emplace_back(Kh.col(j), h);
                ++found;
            }
        if (found < mult)
            throw InternalRankMismatch("operator does not have the expected Jordan type");
    }

    Mat C(F, n, n);
    int col = 0;
    for (const auto& [t, h] : tops)
        for (int a = h - 1; a >= 0; --a) {
            Mat v = powers[static_cast<size_t>(a)] * t;
            for (int i = 0; i < n; ++i) C.set(i, col, v.at(i, 0));
            ++col;
        }
    if (col != n) throw InternalRankMismatch("Jordan chains do not fill the space");
    return C;
}

}  // namespace

bool check_condition_31(const LatticeInstance& L) {
    const int n = L.n(), m = L.m(), r = L.r();
    if (n == 0) return true;
    Mat J = make_jordan_matrix(L.jordan, L.field);
    std::vector<Mat> Jp = matrix_powers(J, m - 1);
    Mat M(L.field, n, m * r);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j) {
            Mat v = Jp[static_cast<size_t>(i)] * L.basis[static_cast<size_t>(j)];
            for (int row = 0; row < n; ++row) M.set(row, i * r + j, v.at(row, 0));
        }
    return rank(M) == n;
}

ArrangedBasis arrange_segments(const LatticeInstance& L) {
    const int n = L.n(), m = L.m(), r = L.r();
    const std::vector<int>& k = L.jordan.k;
    Mat J = make_jordan_matrix(L.jordan, L.field);
    std::vector<Mat> Jp = matrix_powers(J, m == 0 ? 0 : m - 1);
    auto image = [&](int power, int j) { return Jp[static_cast<size_t>(power)] * L.basis[static_cast<size_t>(j)]; };

    // dim N^u V = n - (c_1 + ... + c_u)
    auto dim_image = [&](int u) {
        int d = n;
        for (int i = 1; i <= u; ++i) d -= L.jordan.c.part(i);
        return d;
    };

    ArrangedBasis A;
    A.segments.assign(static_cast<size_t>(m + 1), {});
    A.shape = k;
    std::vector<bool> chosen(static_cast<size_t>(r), false);

    for (int u = m + 1; u >= 2; --u) {
        EchelonBasis E(L.field, n);
        for (int beta = u + 1; beta <= m + 1; ++beta)
            for (int idx : A.segment(beta))
                for (int alpha = u - 2; alpha <= beta - 2; ++alpha)
                    if (!E.try_add(image(alpha, idx)))
                        throw InternalRankMismatch("inherited arrangement vectors became dependent");
        const int target = dim_image(u - 2);
        for (int j = 0; j < r && E.rank() < target; ++j) {
            if (chosen[static_cast<size_t>(j)]) continue;
            if (E.try_add(image(u - 2, j))) {
                A.segments[static_cast<size_t>(u - 1)].push_back(j);
                chosen[static_cast<size_t>(j)] = true;
            }
        }
        if (E.rank() < target)
            throw SpanFailure("the vectors N^i l_j do not span V (condition 3.1 fails)");
        if (static_cast<int>(A.segment(u).size()) != k[static_cast<size_t>(u - 1)])
            throw InternalRankMismatch("segment size disagrees with the Jordan invariants");
    }
    for (int j = 0; j < r; ++j)
        if (!chosen[static_cast<size_t>(j)]) A.segments[0].push_back(j);
    if (static_cast<int>(A.segments[0].size()) != k[0])
        throw InternalRankMismatch("leftover segment size disagrees with k_1");
    for (int u = 1; u <= m + 1; ++u)
        A.permutation.insert(A.permutation.end(), A.segment(u).begin(), A.segment(u).end());
    return A;
}

SiegelObject extract_siegel(const LatticeInstance& L, const ArrangedBasis& A) {
    const int n = L.n(), m = L.m();
    Mat J = make_jordan_matrix(L.jordan, L.field);
    std::vector<Mat> Jp = matrix_powers(J, m == 0 ? 0 : m - 1);
    auto image = [&](int power, int j) { return Jp[static_cast<size_t>(power)] * L.basis[static_cast<size_t>(j)]; };

    SiegelObject S(L.field, m, A.shape);
    for (int u = 1; u <= m; ++u) {
        const int ku = S.k_at(u);
        if (ku == 0) continue;
        // columns of the (3.12) basis of N^{u-1}V, ordered by (z, y, j)
        std::vector<std::tuple<int, int, int>> cols;  // (z, y, j-position)
        for (int z = u - 1; z <= m - 1; ++z)
            for (int y = z + 2; y <= m + 1; ++y)
                for (int j = 0; j < S.k_at(y); ++j) cols.emplace_back(z, y, j);
        Mat M(L.field, n, static_cast<int>(cols.size()));
        for (size_t cidx = 0; cidx < cols.size(); ++cidx) {
            auto [z, y, j] = cols[cidx];
            Mat v = image(z, A.segment(y)[static_cast<size_t>(j)]);
            for (int row = 0; row < n; ++row) M.set(row, static_cast<int>(cidx), v.at(row, 0));
        }
        Mat RHS(L.field, n, ku);
        for (int i = 0; i < ku; ++i) {
            Mat v = image(u - 1, A.segment(u)[static_cast<size_t>(i)]);
            for (int row = 0; row < n; ++row) RHS.set(row, i, v.at(row, 0));
        }
        Mat X(L.field, 0, 0);
        try {
            X = solve_exact(M, RHS);
        } catch (const Inconsistent&) {
            throw NotInSpan("leading vector not in the arranged basis span");
        }
        for (size_t cidx = 0; cidx < cols.size(); ++cidx) {
            auto [z, y, j] = cols[cidx];
            Mat entry = S.at(u, y, z);
            for (int i = 0; i < ku; ++i) entry.set(i, j, -X.at(static_cast<int>(cidx), i));
            S.set(u, y, z, std::move(entry));
        }
    }
    return S;
}

// ---------------------------------------------------------------------------
// omega / chi and the pairing
// ---------------------------------------------------------------------------

namespace {

std::vector<int> prefix_sums(const std::vector<int>& k) {
    std::vector<int> pre{0};
    for (int v : k) pre.push_back(pre.back() + v);
    return pre;
}

}  // namespace

std::vector<QBasisElement> omega_basis(const SiegelObject& S) {
    const int m = S.m(), r = S.r();
    std::vector<int> pre = prefix_sums(S.k());
    auto flat = [&](int u, int i) { return pre[static_cast<size_t>(u - 1)] + i; };
    std::vector<QBasisElement> out;
    for (int u = 1; u <= m + 1; ++u) {
        for (int i = 0; i < S.k_at(u); ++i) {
            QBasisElement e;
            e.u = u;
            e.i = i;
            e.coords.assign(static_cast<size_t>(r), Poly::zero(S.field()));
            e.coords[static_cast<size_t>(flat(u, i))] =
                Poly::monomial(S.field(), FieldValue::one(S.field()), u - 1);
            if (u <= m)
                for (int z = u - 1; z <= m - 1; ++z)
                    for (int y = z + 2; y <= m + 1; ++y) {
                        const Mat& blk = S.at(u, y, z);
                        for (int j = 0; j < S.k_at(y); ++j) {
                            if (blk.at(i, j).is_zero()) continue;
                            size_t c = static_cast<size_t>(flat(y, j));
                            e.coords[c] = e.coords[c] + Poly::monomial(S.field(), blk.at(i, j), z);
                        }
                    }
            out.push_back(std::move(e));
        }
    }
    return out;
}

std::vector<QBasisElement> chi_basis(const SiegelObject& S) {
    const int m = S.m(), r = S.r();
    DualSiegelObject Sbar = dual_siegel(S);
    const std::vector<int>& kd = Sbar.k();
    // flat dual order: segments m+1 down to 1
    std::vector<int> pre(static_cast<size_t>(m + 2), 0);
    // offset of segment u = sum of k'_j for j > u
    for (int u = m; u >= 1; --u)
        pre[static_cast<size_t>(u)] =
            pre[static_cast<size_t>(u + 1)] + kd[static_cast<size_t>(u)];  // kd[u] = k'_{u+1}
    auto flat = [&](int u, int i) { return pre[static_cast<size_t>(u)] + i; };

    std::vector<QBasisElement> out;
    for (int u = m + 1; u >= 1; --u) {
        for (int i = 0; i < Sbar.k_at(u); ++i) {
            QBasisElement e;
            e.u = u;
            e.i = i;
            e.coords.assign(static_cast<size_t>(r), Poly::zero(S.field()));
            e.coords[static_cast<size_t>(flat(u, i))] =
                Poly::monomial(S.field(), FieldValue::one(S.field()), u - 1);
            if (u <= m)
                for (int z = u - 1; z <= m - 1; ++z)
                    for (int y = z + 2; y <= m + 1; ++y) {
                        const Mat& blk = Sbar.at(u, y, z);
                        for (int j = 0; j < Sbar.k_at(y); ++j) {
                            if (blk.at(i, j).is_zero()) continue;
                            size_t c = static_cast<size_t>(flat(y, j));
                            e.coords[c] = e.coords[c] + Poly::monomial(S.field(), blk.at(i, j), z);
                        }
                    }
            out.push_back(std::move(e));
        }
    }
    return out;
}

PairingReport verify_pairing(const SiegelObject& S) {
    const int m = S.m(), r = S.r();
    std::vector<QBasisElement> omega = omega_basis(S);
    std::vector<QBasisElement> chi = chi_basis(S);
    PairingReport rep;
    rep.identity_ok = true;
    rep.membership_ok = true;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            Poly pair = Poly::zero(S.field());
            for (int c = 0; c < r; ++c)
                pair = pair + omega[static_cast<size_t>(a)].coords[static_cast<size_t>(c)] *
                                  chi[static_cast<size_t>(b)].coords[static_cast<size_t>(c)];
            Poly expected = (a == b) ? Poly::monomial(S.field(), FieldValue::one(S.field()), m)
                                     : Poly::zero(S.field());
            bool member = true;
            for (int t = 0; t < m; ++t)
                if (!pair.coeff(t).is_zero()) member = false;
            if (!member) rep.membership_ok = false;
            if (pair != expected) {
                rep.identity_ok = false;
                if (!rep.failing_pair) {
                    rep.failing_pair = {a, b};
                    rep.failing_value = pair;
                }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// omega basis checks against the evaluation kernel
// ---------------------------------------------------------------------------

OmegaReport verify_omega_basis(const LatticeInstance& L, const ArrangedBasis& A,
                               const SiegelObject& S) {
    const int n = L.n(), m = L.m(), r = L.r();
    Mat J = make_jordan_matrix(L.jordan, L.field);
    std::vector<Mat> Jp = matrix_powers(J, m);
    std::vector<QBasisElement> omega = omega_basis(S);

    OmegaReport rep;
    rep.kernel_ok = true;
    for (const auto& e : omega) {
        Mat v = Mat::zero(L.field, n, 1);
        for (int c = 0; c < r; ++c) {
            const Poly& p = e.coords[static_cast<size_t>(c)];
            const Mat& l = L.basis[static_cast<size_t>(A.permutation[static_cast<size_t>(c)])];
            for (int t = 0; t <= p.degree() && t < m; ++t)
                if (!p.coeff(t).is_zero()) v = v + (Jp[static_cast<size_t>(t)] * l).scaled(p.coeff(t));
        }
        if (!v.is_zero()) rep.kernel_ok = false;
    }

    // spanning over F[N]/(N^{m+1}): the truncations of N^a omega must reach
    // the full kernel of the truncated evaluation map, of dimension (m+1)r - n
    const int T = m + 1;
    Mat E(L.field, n, T * r);
    for (int t = 0; t < T; ++t)
        for (int c = 0; c < r; ++c) {
            Mat img = (t < m) ? Jp[static_cast<size_t>(t)] *
                                    L.basis[static_cast<size_t>(A.permutation[static_cast<size_t>(c)])]
                              : Mat::zero(L.field, n, 1);
            for (int row = 0; row < n; ++row) E.set(row, c * T + t, img.at(row, 0));
        }
    int kernel_dim = T * r - rank(E);

    EchelonBasis span(L.field, T * r);
    int span_rank = 0;
    for (const auto& e : omega)
        for (int a = 0; a <= m; ++a) {
            Mat vec = Mat::zero(L.field, T * r, 1);
            for (int c = 0; c < r; ++c) {
                const Poly& p = e.coords[static_cast<size_t>(c)];
                for (int t = 0; t <= p.degree(); ++t) {
                    int shifted = t + a;
                    if (shifted < T && !p.coeff(t).is_zero())
                        vec.set(c * T + shifted, 0, p.coeff(t));
                }
            }
            if (span.try_add(vec)) ++span_rank;
        }
    rep.spanning_ok = (span_rank == kernel_dim);
    return rep;
}

// ---------------------------------------------------------------------------
// Round trip through the dual lattice
// ---------------------------------------------------------------------------

RoundtripReport roundtrip_dual(const LatticeInstance& L) {
    const int n = L.n(), m = L.m(), r = L.r();
    const FieldPtr& F = L.field;
    ArrangedBasis A = arrange_segments(L);
    SiegelObject S = extract_siegel(L, A);
    DualSiegelObject Sbar = dual_siegel(S);

    Mat J = make_jordan_matrix(L.jordan, F);
    std::vector<Mat> Jp = matrix_powers(J, m == 0 ? 0 : m - 1);

    // W = (F[N]/N^m)^r over the arranged l basis, coordinate (c, t) = c*m + t.
    // The evaluation kernel qbar is ker(W -> V).
    Mat E(F, n, m * r);
    for (int c = 0; c < r; ++c)
        for (int t = 0; t < m; ++t) {
            Mat img = Jp[static_cast<size_t>(t)] *
                      L.basis[static_cast<size_t>(A.permutation[static_cast<size_t>(c)])];
            for (int row = 0; row < n; ++row) E.set(row, c * m + t, img.at(row, 0));
        }
    Mat qbar = kernel_basis(E);  // (m r) x (m r - n)

    // Q' = { x in W' : sum_c x_c(N) y_c(N) = 0 mod N^m for all y in qbar },
    // in the flat dual coordinates (lambda_b pairs with l_b).
    int nk = qbar.cols();
    Mat Pmat(F, nk * m, m * r);
    for (int kidx = 0; kidx < nk; ++kidx)
        for (int s = 0; s < m; ++s)
            for (int c = 0; c < r; ++c)
                for (int t = 0; t <= s; ++t)
                    Pmat.set(kidx * m + s, c * m + t, qbar.at(c * m + (s - t), kidx));
    Mat Qprime = kernel_basis(Pmat);  // columns span q'_L mod N^m, dimension n
    if (Qprime.cols() != n)
        throw InternalRankMismatch("dual kernel has unexpected dimension");

    // V' = W'/Q': complete Q' by standard basis vectors to a basis of W';
    // the quotient coordinates are the complement components of the inverse.
    const int np = m * r - n;  // dim V'
    std::vector<int> comp;
    {
        EchelonBasis eb(F, m * r);
        for (int j = 0; j < n; ++j) eb.try_add(Qprime.col(j));
        for (int j = 0; j < m * r && static_cast<int>(comp.size()) < np; ++j) {
            Mat ej = Mat::zero(F, m * r, 1);
            ej.set(j, 0, FieldValue::one(F));
            if (eb.try_add(ej)) comp.push_back(j);
        }
    }
    Mat Mfull(F, m * r, m * r);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m * r; ++i) Mfull.set(i, j, Qprime.at(i, j));
    for (int j = 0; j < np; ++j)
        Mfull.set(comp[static_cast<size_t>(j)], n + j, FieldValue::one(F));
    Mat Minv = solve_exact(Mfull, Mat::identity(F, m * r));
    auto project = [&](const Mat& w) {
        Mat full = Minv * w;
        Mat out(F, np, 1);
        for (int i = 0; i < np; ++i) out.set(i, 0, full.at(n + i, 0));
        return out;
    };
    auto shift_N = [&](const Mat& w) {
        // multiplication by N in W': (c, t) -> (c, t+1), top degree drops
        Mat out = Mat::zero(F, m * r, 1);
        for (int c = 0; c < r; ++c)
            for (int t = 0; t + 1 < m; ++t) out.set(c * m + t + 1, 0, w.at(c * m + t, 0));
        return out;
    };

    // N' on V' and the images of the dual basis vectors
    Mat Nprime(F, np, np);
    for (int j = 0; j < np; ++j) {
        Mat ej = Mat::zero(F, m * r, 1);
        ej.set(comp[static_cast<size_t>(j)], 0, FieldValue::one(F));
        Mat col = project(shift_N(ej));
        for (int i = 0; i < np; ++i) Nprime.set(i, j, col.at(i, 0));
    }
    std::vector<Mat> dual_vectors;
    for (int c = 0; c < r; ++c) {
        Mat ec = Mat::zero(F, m * r, 1);
        ec.set(c * m + 0, 0, FieldValue::one(F));
        dual_vectors.push_back(project(ec));
    }

    // Jordan data of N' from kernel ranks; it must match Lemma 4.1's formula.
    std::vector<int> cprime;
    {
        Mat power = Mat::identity(F, np);
        int prev_rank = np;
        for (int i = 1; i <= m; ++i) {
            power = power * Nprime;
            int rk = rank(power);
            cprime.push_back(prev_rank - rk);
            prev_rank = rk;
        }
    }
    PartitionWithZeroes cp(std::move(cprime));
    PartitionWithZeroes dp = dual_partition(cp, r);
    JordanData jd_dual = jordan_data(dp, m);
    if (!(jd_dual == dual_jordan_data(L.jordan)))
        throw InternalRankMismatch("dual Jordan data disagrees with the partition duality");

    // move to coordinates in which N' is the canonical Jordan matrix
    if (np > 0) {
        Mat C = nilpotent_jordan_basis(Nprime, jd_dual.d);
        Mat Cinv = solve_exact(C, Mat::identity(F, np));
        if (Cinv * Nprime * C != make_jordan_matrix(jd_dual, F))
            throw InternalRankMismatch("Jordan basis change failed for the dual operator");
        for (Mat& v : dual_vectors) v = Cinv * v;
    }

    LatticeInstance Ldual{F, jd_dual, dual_vectors};
    // the dual basis arrives in the reversed-segment flat order; if the
    // greedy arrangement deviates from it the instance is non-generic
    ArrangedBasis Ad;
    try {
        Ad = arrange_segments(Ldual);
    } catch (const SpanFailure&) {
        RoundtripReport rep;
        rep.status = RoundtripStatus::Inadmissible;
        return rep;
    }
    std::vector<int> expected_offsets(static_cast<size_t>(m + 2), 0);
    for (int u = m; u >= 1; --u)
        expected_offsets[static_cast<size_t>(u)] =
            expected_offsets[static_cast<size_t>(u + 1)] + jd_dual.k_at(u + 1);
    for (int u = 1; u <= m + 1; ++u) {
        const auto& seg = Ad.segment(u);
        for (size_t i = 0; i < seg.size(); ++i)
            if (seg[i] != expected_offsets[static_cast<size_t>(u)] + static_cast<int>(i)) {
                RoundtripReport rep;
                rep.status = RoundtripStatus::Inadmissible;
                return rep;
            }
    }

    SiegelObject Sdual = extract_siegel(Ldual, Ad);
    RoundtripReport rep;
    rep.status = RoundtripStatus::Match;
    for (const TetraIndex& t : tetra_indices(m)) {
        if (Sdual.at(t) != Sbar.at(t)) {
            rep.status = RoundtripStatus::Mismatch;
            rep.failing_entry = t;
            rep.expected = Sbar.at(t);
            rep.actual = Sdual.at(t);
            break;
        }
    }
    return rep;
}

}  // namespace siegel
