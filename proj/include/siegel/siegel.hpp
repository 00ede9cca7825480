#pragma once

#include <array>
#include <map>
#include <optional>

#include "siegel/npoly_matrix.hpp"

namespace siegel {

struct ShapeMismatch : Error {
    using Error::Error;
};
struct SystemInconsistent : Error {
    using Error::Error;
};

/// Index (u, y, z) of a Siegel matrix S_{uvyz} with v = u-1 implied:
/// 1 <= u <= m, u-1 <= z <= m-1, z+2 <= y <= m+1.
struct TetraIndex {
    int u, y, z;
    bool operator==(const TetraIndex& o) const { return u == o.u && y == o.y && z == o.z; }
    /// Lexicographic in (u, z, y); fixes iteration and serialization order.
    bool operator<(const TetraIndex& o) const {
        if (u != o.u) return u < o.u;
        if (z != o.z) return z < o.z;
        return y < o.y;
    }
};

bool tetra_valid(int m, int u, int y, int z);
/// All indices for nilpotency degree m, lexicographic in (u, z, y); the
/// count is the tetrahedral number binom(m+2, 3).
std::vector<TetraIndex> tetra_indices(int m);
long tetra_count(int m);

struct Quad {
    int a, b, c, d;
    bool operator==(const Quad& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

/// The involution s(a,b,c,d) = (m+2-c, m-1-d, m+2-a, m-1-b). It maps the
/// Siegel domain {v = u-1} onto the essential-P domain {y = z+2}.
Quad symmetry_s(const Quad& q, int m);

/// The family S_{uvyz} (v = u-1) of k_u x k_y matrices over one field.
/// Indices with zero k are kept as zero-dimensional matrices.
class SiegelObject {
public:
    SiegelObject(FieldPtr field, int m, std::vector<int> k);

    int m() const { return m_; }
    int r() const;
    const std::vector<int>& k() const { return k_; }
    int k_at(int i) const { return (i >= 1 && i <= m_ + 1) ? k_[static_cast<size_t>(i - 1)] : 0; }
    const FieldPtr& field() const { return field_; }

    const Mat& at(int u, int y, int z) const;
    const Mat& at(const TetraIndex& t) const { return at(t.u, t.y, t.z); }
    void set(int u, int y, int z, Mat value);

    bool operator==(const SiegelObject& o) const;
    bool operator!=(const SiegelObject& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    int m_;
    std::vector<int> k_;
    std::map<TetraIndex, Mat> entries_;
};

/// A dual Siegel object is laid out like a Siegel object whose shape is the
/// reversed list k'_i = k_{m+2-i}.
using DualSiegelObject = SiegelObject;

/// Table of the matrices P_{uvyz} on the non-trivial domain
/// v >= u-1, z in [v, m-1], y in [z+2, m+1]. Trivial-domain values
/// (v < u-1) are answered at lookup time: -I when (y, z) = (u, v), else 0.
class PTable {
public:
    PTable(FieldPtr field, int m, std::vector<int> k);

    int m() const { return m_; }
    const std::vector<int>& k() const { return k_; }
    int k_at(int i) const { return (i >= 1 && i <= m_ + 1) ? k_[static_cast<size_t>(i - 1)] : 0; }
    const FieldPtr& field() const { return field_; }

    bool stored(int u, int v, int y, int z) const;
    Mat lookup(int u, int v, int y, int z) const;
    void set(int u, int v, int y, int z, Mat value);
    const std::map<std::array<int, 4>, Mat>& entries() const { return entries_; }

private:
    FieldPtr field_;
    int m_;
    std::vector<int> k_;
    std::map<std::array<int, 4>, Mat> entries_;
};

/// Fill the whole non-trivial domain from the recurrence
///   P_{u,v,psi,xi} = -(sum S P) + S_{u,u-1,psi,u-1+xi-v},
/// processed by decreasing v (each step only references larger v, or the
/// same v with larger first index).
PTable compute_P(const SiegelObject& S);

/// Dual Siegel object: Sbar_{uvyz} = -P_{s(uvyz)}^t, shape reversed.
DualSiegelObject dual_siegel(const SiegelObject& S);

/// Skew-block coefficient matrices C_0..C_m of B:
/// (C_i)_{a,b} = S^t_{m+2-b, m+1-b, a, i} on the Siegel domain,
/// (C_i)_{i+1, m+1-i} = I.
std::vector<Mat> build_C(const SiegelObject& S);
NPolyMatrix build_B(const SiegelObject& S);

/// Skew-block coefficient matrices of Bbar:
/// (Cbar_i)_{a,b} = -P_{a, m-1-i, m+2-b, m-b} on the non-trivial domain,
/// (Cbar_i)_{m+1-i, i+1} = I.
std::vector<Mat> build_Cbar(const SiegelObject& S, const PTable& P);
std::vector<Mat> build_Cbar(const SiegelObject& S);
NPolyMatrix build_Bbar(const SiegelObject& S);

struct BBbarReport {
    bool ok = false;
    NPolyMatrix product;            // B^t * Bbar
    std::vector<int> bad_degrees;   // degrees whose coefficient is wrong
};

/// Check B^t * Bbar = I_r N^m exactly.
BBbarReport verify_BBbar(const SiegelObject& S);

struct RecurrenceReport {
    bool ok = false;
    long tuples_checked = 0;
    std::optional<std::array<int, 4>> failing_tuple;  // (i, j, psi, xi)
};

/// Evaluate the recurrence identity for every admissible (i, j, psi, xi)
/// and report whether each left side is the zero matrix.
RecurrenceReport verify_recurrence(const SiegelObject& S);

/// Reconstruct Bbar from B alone: the pattern blocks are forced and the
/// remaining unknowns satisfy a block-unitriangular system, solved by
/// back-substitution with unknowns ordered by decreasing i+alpha.
/// Throws SystemInconsistent when B is not a valid B(S) for the shape.
NPolyMatrix recover_Bbar(const NPolyMatrix& B, const std::vector<int>& k);

/// Block unitriangular matrices with (i,j) blocks S_{i,i-1,j,i-1} resp.
/// -P_{i,j-2,j,j-2}; they are mutually inverse.
Mat build_gothic_S(const SiegelObject& S);
Mat build_gothic_P(const SiegelObject& S);

}  // namespace siegel
