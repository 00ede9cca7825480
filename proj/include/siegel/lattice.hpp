#pragma once

#include "siegel/partitions.hpp"
#include "siegel/siegel.hpp"

namespace siegel {

struct SpanFailure : Error {
    using Error::Error;
};
struct InternalRankMismatch : Error {
    using Error::Error;
};

/// A lattice shadow (V, N, L): the Jordan data of the nilpotent operator on
/// V = F^n and r basis vectors of the module L, as n x 1 columns over the
/// big field.
struct LatticeInstance {
    FieldPtr field;
    JordanData jordan;
    std::vector<Mat> basis;

    int n() const { return jordan.n; }
    int r() const { return jordan.r; }
    int m() const { return jordan.m; }
};

/// Block-diagonal nilpotent Jordan matrix with block sizes jordan.d
/// (superdiagonal ones inside each block; zero parts contribute nothing).
Mat make_jordan_matrix(const JordanData& jd, const FieldPtr& field);

/// Condition: the vectors N^i l_j (0 <= i <= m-1) span V.
bool check_condition_31(const LatticeInstance& L);

/// Result of the greedy segment arrangement: segment u holds the original
/// indices (0-based) of its vectors; the flat permutation concatenates
/// segments 1..m+1.
struct ArrangedBasis {
    std::vector<std::vector<int>> segments;  // size m+1; segments[u-1] ascending
    std::vector<int> shape;                  // k_1..k_{m+1}
    std::vector<int> permutation;            // flat arranged order

    const std::vector<int>& segment(int u) const { return segments[static_cast<size_t>(u - 1)]; }
};

/// Greedy top-down selection: for u = m+1 down to 2, scan the unchosen
/// vectors in ascending original order and accept those whose N^{u-2} image
/// extends the inherited images to a basis of N^{u-2}V; the leftovers form
/// segment 1. Throws SpanFailure when the span condition fails and
/// InternalRankMismatch when segment sizes disagree with the Jordan data.
ArrangedBasis arrange_segments(const LatticeInstance& L);

/// Express each N^{u-1} l_{ui} in the arranged basis of N^{u-1}V and negate
/// the coefficients into Siegel matrices.
SiegelObject extract_siegel(const LatticeInstance& L, const ArrangedBasis& A);

/// Element of the module L (x) C[[N]] (or its dual), as one polynomial in N
/// per flat basis position.
struct QBasisElement {
    int u = 0;  // owner segment
    int i = 0;  // position inside the segment (0-based)
    std::vector<Poly> coords;
};

/// omega_{ui} = N^{u-1} l_{ui} + sum (S_{uvyz})_{ij} N^z l_{yj}; coordinates
/// over the arranged l order, elements in flat order.
std::vector<QBasisElement> omega_basis(const SiegelObject& S);

/// chi_{ui} = N^{u-1} lambda_{ui} + sum (Sbar_{uvyz})_{ij} N^z lambda_{yj};
/// coordinates over the dual-basis flat order (segments m+1 down to 1),
/// elements listed in that flat order.
std::vector<QBasisElement> chi_basis(const SiegelObject& S);

struct PairingReport {
    bool identity_ok = false;    // full pairing matrix equals I_r N^m
    bool membership_ok = false;  // every pairing lies in N^m C[[N]]
    std::optional<std::pair<int, int>> failing_pair;  // flat row/col indices
    std::optional<Poly> failing_value;
};

/// Pair every omega against every chi with <l_a, lambda_b> = delta_ab in
/// flat coordinates; the matrix must be I_r N^m exactly.
PairingReport verify_pairing(const SiegelObject& S);

struct OmegaReport {
    bool kernel_ok = false;    // every omega evaluates to zero in V
    bool spanning_ok = false;  // omegas span the kernel over F[N]/(N^{m+1})
};

/// Membership and spanning checks for the omega basis of the kernel of the
/// evaluation map.
OmegaReport verify_omega_basis(const LatticeInstance& L, const ArrangedBasis& A,
                               const SiegelObject& S);

enum class RoundtripStatus { Match, Mismatch, Inadmissible };

struct RoundtripReport {
    RoundtripStatus status = RoundtripStatus::Mismatch;
    std::optional<TetraIndex> failing_entry;
    std::optional<Mat> expected;  // Sbar entry
    std::optional<Mat> actual;    // extracted dual entry
};

/// Builds the dual module concretely (quotient of the dual free module by
/// the orthogonal of the evaluation kernel), arranges and extracts its
/// Siegel object, and compares it entry-for-entry with dual_siegel. The
/// dual basis is taken in the prescribed reversed-segment order; a greedy
/// arrangement that deviates from it is reported as Inadmissible.
RoundtripReport roundtrip_dual(const LatticeInstance& L);

}  // namespace siegel
