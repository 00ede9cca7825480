#include "siegel/siegel.hpp"

#include <numeric>

namespace siegel {

bool tetra_valid(int m, int u, int y, int z) {
    return u >= 1 && u <= m && z >= u - 1 && z <= m - 1 && y >= z + 2 && y <= m + 1;
}

std::vector<TetraIndex> tetra_indices(int m) {
    if (m < 1) throw Error("nilpotency degree must be >= 1");
    std::vector<TetraIndex> out;
    for (int u = 1; u <= m; ++u)
        for (int z = u - 1; z <= m - 1; ++z)
            for (int y = z + 2; y <= m + 1; ++y) out.push_back(TetraIndex{u, y, z});
    return out;
}

long tetra_count(int m) {
    long mm = m;
    return mm * (mm + 1) * (mm + 2) / 6;  // binom(m+2, 3)
}

Quad symmetry_s(const Quad& q, int m) {
    return Quad{m + 2 - q.c, m - 1 - q.d, m + 2 - q.a, m - 1 - q.b};
}

// ---------------------------------------------------------------------------
// SiegelObject
// ---------------------------------------------------------------------------

SiegelObject::SiegelObject(FieldPtr field, int m, std::vector<int> k)
    : field_(std::move(field)), m_(m), k_(std::move(k)) {
    if (m_ < 1) throw ShapeMismatch("nilpotency degree must be >= 1");
    if (static_cast<int>(k_.size()) != m_ + 1)
        throw ShapeMismatch("shape must list k_1..k_{m+1}");
    for (int v : k_)
        if (v < 0) throw ShapeMismatch("negative segment size");
    for (const TetraIndex& t : tetra_indices(m_))
        entries_.emplace(t, Mat::zero(field_, k_at(t.u), k_at(t.y)));
}

int SiegelObject::r() const { return std::accumulate(k_.begin(), k_.end(), 0); }

const Mat& SiegelObject::at(int u, int y, int z) const {
    auto it = entries_.find(TetraIndex{u, y, z});
    if (it == entries_.end())
        throw ShapeMismatch("no Siegel entry at (" + std::to_string(u) + "," + std::to_string(y) +
                            "," + std::to_string(z) + ")");
    return it->second;
}

void SiegelObject::set(int u, int y, int z, Mat value) {
    auto it = entries_.find(TetraIndex{u, y, z});
    if (it == entries_.end())
        throw ShapeMismatch("no Siegel entry at (" + std::to_string(u) + "," + std::to_string(y) +
                            "," + std::to_string(z) + ")");
    if (value.rows() != k_at(u) || value.cols() != k_at(y))
        throw ShapeMismatch("Siegel entry dimensions must be k_u x k_y");
    require_same(field_, value.field());
    it->second = std::move(value);
}

bool SiegelObject::operator==(const SiegelObject& o) const {
    return m_ == o.m_ && k_ == o.k_ && field_->same(*o.field_) && entries_ == o.entries_;
}

// ---------------------------------------------------------------------------
// PTable
// ---------------------------------------------------------------------------

PTable::PTable(FieldPtr field, int m, std::vector<int> k)
    : field_(std::move(field)), m_(m), k_(std::move(k)) {
    if (static_cast<int>(k_.size()) != m_ + 1) throw ShapeMismatch("shape must list k_1..k_{m+1}");
}

bool PTable::stored(int u, int v, int y, int z) const {
    return v >= u - 1 && u >= 1 && z >= v && z <= m_ - 1 && y >= z + 2 && y <= m_ + 1;
}

Mat PTable::lookup(int u, int v, int y, int z) const {
    if (z < v || z > m_ - 1 || y < z + 2 || y > m_ + 1)
        throw ShapeMismatch("P_{" + std::to_string(u) + "," + std::to_string(v) + "," +
                            std::to_string(y) + "," + std::to_string(z) + "} is not defined");
    if (v >= u - 1) {
        auto it = entries_.find({u, v, y, z});
        if (it == entries_.end())
            throw ShapeMismatch("P entry missing at (" + std::to_string(u) + "," +
                                std::to_string(v) + "," + std::to_string(y) + "," +
                                std::to_string(z) + ")");
        return it->second;
    }
    // trivial domain
    if (y == u && z == v) return -Mat::identity(field_, k_at(u));
    return Mat::zero(field_, k_at(u), k_at(y));
}

void PTable::set(int u, int v, int y, int z, Mat value) {
    if (!stored(u, v, y, z)) throw ShapeMismatch("index outside the non-trivial P domain");
    if (value.rows() != k_at(u) || value.cols() != k_at(y))
        throw ShapeMismatch("P entry dimensions must be k_u x k_y");
    entries_.insert_or_assign({u, v, y, z}, std::move(value));
}

// ---------------------------------------------------------------------------
// The recurrence
// ---------------------------------------------------------------------------

PTable compute_P(const SiegelObject& S) {
    const int m = S.m();
    PTable P(S.field(), m, S.k());
    for (int v = m - 1; v >= 0; --v) {
        for (int u = v + 1; u >= 1; --u) {
            for (int xi = v; xi <= m - 1; ++xi) {
                for (int psi = xi + 2; psi <= m + 1; ++psi) {
                    if (u == v + 1) {
                        P.set(u, v, psi, xi, S.at(u, psi, xi));
                        continue;
                    }
                    // P_{u,v,psi,xi} = -(sum_{b=0}^{xi-v} sum_{a=u+1+b}^{v+1+b}
                    //     S_{u,u-1,a,u-1+b} P_{a,v+b,psi,xi}) + S_{u,u-1,psi,u-1+xi-v}
                    Mat acc = Mat::zero(S.field(), S.k_at(u), S.k_at(psi));
                    for (int b = 0; b <= xi - v; ++b)
                        for (int a = u + 1 + b; a <= v + 1 + b; ++a)
                            acc = acc + S.at(u, a, u - 1 + b) * P.lookup(a, v + b, psi, xi);
                    P.set(u, v, psi, xi, S.at(u, psi, u - 1 + xi - v) - acc);
                }
            }
        }
    }
    return P;
}

RecurrenceReport verify_recurrence(const SiegelObject& S) {
    const int m = S.m();
    PTable P = compute_P(S);
    RecurrenceReport rep;
    rep.ok = true;
    for (int i = 2; i <= m + 1; ++i) {
        for (int j = 1; j <= m - i + 2; ++j) {
            for (int xi = m - j; xi <= m - 1; ++xi) {
                for (int psi = xi + 2; psi <= m + 1; ++psi) {
                    Mat lhs = Mat::zero(S.field(), S.k_at(i - 1), S.k_at(psi));
                    for (int b = 0; b <= j + xi - m; ++b)
                        for (int a = i + b; a <= m + 1 - j + b; ++a)
                            lhs = lhs + S.at(i - 1, a, i - 2 + b) * P.lookup(a, m - j + b, psi, xi);
                    lhs = lhs - S.at(i - 1, psi, i - 2 + xi + j - m);
                    lhs = lhs + P.lookup(i - 1, m - j, psi, xi);
                    ++rep.tuples_checked;
                    if (!lhs.is_zero()) {
                        rep.ok = false;
                        if (!rep.failing_tuple) rep.failing_tuple = std::array<int, 4>{i, j, psi, xi};
                    }
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

DualSiegelObject dual_siegel(const SiegelObject& S) {
    const int m = S.m();
    PTable P = compute_P(S);
    std::vector<int> kd(S.k().rbegin(), S.k().rend());
    DualSiegelObject out(S.field(), m, kd);
    for (const TetraIndex& t : tetra_indices(m)) {
        Quad s = symmetry_s(Quad{t.u, t.u - 1, t.y, t.z}, m);
        out.set(t.u, t.y, t.z, -P.lookup(s.a, s.b, s.c, s.d).transpose());
    }
    return out;
}

// ---------------------------------------------------------------------------
// B and Bbar
// ---------------------------------------------------------------------------

std::vector<Mat> build_C(const SiegelObject& S) {
    const int m = S.m();
    BlockShape shape = BlockShape::skew(S.k());
    const int r = S.r();
    std::vector<Mat> C;
    C.reserve(static_cast<size_t>(m + 1));
    for (int i = 0; i <= m; ++i) {
        Mat Ci = Mat::zero(S.field(), r, r);
        for (int a = 1; a <= m + 1; ++a)
            for (int b = 1; b <= m + 1; ++b) {
                int u = m + 2 - b;
                if (tetra_valid(m, u, a, i))
                    block_set(Ci, shape, a, b, S.at(u, a, i).transpose());
            }
        block_set(Ci, shape, i + 1, m + 1 - i, Mat::identity(S.field(), S.k_at(i + 1)));
        C.push_back(std::move(Ci));
    }
    return C;
}

NPolyMatrix build_B(const SiegelObject& S) {
    return NPolyMatrix(S.field(), S.r(), S.r(), build_C(S));
}

std::vector<Mat> build_Cbar(const SiegelObject& S, const PTable& P) {
    const int m = S.m();
    BlockShape shape = BlockShape::skew(S.k());
    const int r = S.r();
    std::vector<Mat> C;
    C.reserve(static_cast<size_t>(m + 1));
    for (int i = 0; i <= m; ++i) {
        Mat Ci = Mat::zero(S.field(), r, r);
        for (int a = 1; a <= m - i; ++a)
            for (int b = 1; b <= i + 1; ++b)
                block_set(Ci, shape, a, b, -P.lookup(a, m - 1 - i, m + 2 - b, m - b));
        block_set(Ci, shape, m + 1 - i, i + 1, Mat::identity(S.field(), S.k_at(m + 1 - i)));
        C.push_back(std::move(Ci));
    }
    return C;
}

std::vector<Mat> build_Cbar(const SiegelObject& S) { return build_Cbar(S, compute_P(S)); }

NPolyMatrix build_Bbar(const SiegelObject& S) {
    return NPolyMatrix(S.field(), S.r(), S.r(), build_Cbar(S));
}

BBbarReport verify_BBbar(const SiegelObject& S) {
    BBbarReport rep{false, npoly_matmul(build_B(S).transpose(), build_Bbar(S)), {}};
    const int r = S.r();
    Mat id = Mat::identity(S.field(), r);
    rep.ok = true;
    for (int mu = 0; mu <= std::max(rep.product.degree(), S.m()); ++mu) {
        const Mat expected = (mu == S.m()) ? id : Mat::zero(S.field(), r, r);
        if (rep.product.coeff(mu) != expected) {
            rep.ok = false;
            rep.bad_degrees.push_back(mu);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Recovery of Bbar from B (the unitriangular system)
// ---------------------------------------------------------------------------

NPolyMatrix recover_Bbar(const NPolyMatrix& B, const std::vector<int>& k) {
    const int m = static_cast<int>(k.size()) - 1;
    if (m < 1) throw ShapeMismatch("shape must list k_1..k_{m+1}");
    const int r = std::accumulate(k.begin(), k.end(), 0);
    if (B.rows() != r || B.cols() != r) throw SystemInconsistent("B has wrong dimensions for shape");
    if (B.degree() > m) throw SystemInconsistent("B has degree above m");
    const FieldPtr& F = B.field();
    BlockShape shape = BlockShape::skew(k);

    // Read the S blocks out of B and validate the zero/identity pattern.
    SiegelObject S(F, m, k);
    for (int i = 0; i <= m; ++i) {
        Mat Ci = B.coeff(i);
        for (int a = 1; a <= m + 1; ++a)
            for (int b = 1; b <= m + 1; ++b) {
                Mat blk = block_get(Ci, shape, a, b);
                int u = m + 2 - b;
                if (a == i + 1 && b == m + 1 - i) {
                    if (!blk.is_identity())
                        throw SystemInconsistent("B identity block missing at degree " +
                                                 std::to_string(i));
                } else if (tetra_valid(m, u, a, i)) {
                    S.set(u, a, i, blk.transpose());
                } else if (!blk.is_zero()) {
                    throw SystemInconsistent("B has a nonzero block outside the S pattern");
                }
            }
    }

    // Unknowns (X_i)_{a,b} for 0 <= i <= m-1, 1 <= a <= m-i, 1 <= b <= i+1;
    // everything else carries the Cbar zero/identity pattern.
    std::vector<Mat> X;
    for (int i = 0; i <= m; ++i) {
        Mat Xi = Mat::zero(F, r, r);
        block_set(Xi, shape, m + 1 - i, i + 1,
                  Mat::identity(F, k[static_cast<size_t>(m - i)]));
        X.push_back(std::move(Xi));
    }
    auto xblock = [&](int i, int a, int b) { return block_get(X[static_cast<size_t>(i)], shape, a, b); };

    for (int s = m; s >= 1; --s) {
        for (int i = 0; i <= m - 1; ++i) {
            int a = s - i;
            if (a < 1 || a > m - i) continue;
            for (int b = 1; b <= i + 1; ++b) {
                // pivot equation (mu, nu, pi) = (i+a-1, m+2-a, b)
                Mat acc = Mat::zero(F, k[static_cast<size_t>(a - 1)],
                                    k[static_cast<size_t>(m + 1 - b)]);
                for (int g = a - 1; g <= i + a - b; ++g)
                    for (int d = g + 2; d <= m + g - i - a + 1; ++d)
                        acc = acc + S.at(a, d, g) * xblock(i + a - 1 - g, d, b);
                acc = acc + S.at(a, m + 2 - b, i + a - b);
                block_set(X[static_cast<size_t>(i)], shape, a, b, -acc);
            }
        }
    }

    NPolyMatrix out(F, r, r, std::move(X));
    NPolyMatrix prod = npoly_matmul(B.transpose(), out);
    for (int mu = 0; mu < m; ++mu)
        if (!prod.coeff(mu).is_zero())
            throw SystemInconsistent("input was not a valid B: residual at degree " +
                                     std::to_string(mu));
    return out;
}

// ---------------------------------------------------------------------------
// The unitriangular pair of Remark 3.24B
// ---------------------------------------------------------------------------

Mat build_gothic_S(const SiegelObject& S) {
    const int m = S.m();
    BlockShape shape = BlockShape::square(S.k());
    Mat G = Mat::identity(S.field(), S.r());
    for (int i = 1; i <= m + 1; ++i)
        for (int j = i + 1; j <= m + 1; ++j) block_set(G, shape, i, j, S.at(i, j, i - 1));
    return G;
}

Mat build_gothic_P(const SiegelObject& S) {
    const int m = S.m();
    PTable P = compute_P(S);
    BlockShape shape = BlockShape::square(S.k());
    Mat G = Mat::identity(S.field(), S.r());
    for (int i = 1; i <= m + 1; ++i)
        for (int j = i + 1; j <= m + 1; ++j) block_set(G, shape, i, j, -P.lookup(i, j - 2, j, j - 2));
    return G;
}

}  // namespace siegel
