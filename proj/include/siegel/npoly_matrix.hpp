#pragma once

#include "siegel/matrix.hpp"

namespace siegel {

/// Matrix of polynomials in the nilpotent symbol N, stored as the list of
/// coefficient matrices C_0..C_deg (dense in the N-degree). The entrywise
/// view (each entry a Poly in N) is available for conversion and oracles.
class NPolyMatrix {
public:
    NPolyMatrix(FieldPtr field, int rows, int cols);
    NPolyMatrix(FieldPtr field, int rows, int cols, std::vector<Mat> coeffs);

    static NPolyMatrix from_entries(FieldPtr field, int rows, int cols,
                                    const std::vector<std::vector<Poly>>& entries);
    /// c * I_n * N^power
    static NPolyMatrix scalar_power(FieldPtr field, int n, const FieldValue& c, int power);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 when zero

    /// Coefficient matrix of N^i (zero matrix outside the stored range).
    Mat coeff(int i) const;
    const std::vector<Mat>& coeffs() const { return coeffs_; }
    void set_coeff(int i, Mat m);

    Poly entry(int r, int c) const;

    NPolyMatrix operator+(const NPolyMatrix& o) const;
    NPolyMatrix operator-(const NPolyMatrix& o) const;
    NPolyMatrix operator-() const;
    NPolyMatrix transpose() const;
    bool operator==(const NPolyMatrix& o) const;
    bool operator!=(const NPolyMatrix& o) const { return !(*this == o); }
    bool is_zero() const;

    void trim();

private:
    FieldPtr field_;
    int rows_, cols_;
    std::vector<Mat> coeffs_;
};

/// Product with exact coefficient convolution: C_mu = sum_{g+d=mu} A_g * B_d.
NPolyMatrix npoly_matmul(const NPolyMatrix& A, const NPolyMatrix& B);

}  // namespace siegel
