#pragma once

#include <optional>
#include <vector>

#include "siegel/fields.hpp"

namespace siegel {

struct DimensionMismatch : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct Inconsistent : Error {
    using Error::Error;
};
struct NotInSpan : Error {
    using Error::Error;
};
struct BadBlockIndex : Error {
    using Error::Error;
};
struct SizeMismatch : Error {
    using Error::Error;
};
struct NotUnitriangular : Error {
    using Error::Error;
};

/// Dense matrix over an exact field. Zero-dimensional shapes (0 x k, k x 0)
/// are first-class values.
class Mat {
public:
    Mat(FieldPtr field, int rows, int cols);
    Mat(FieldPtr field, int rows, int cols, std::vector<FieldValue> entries);

    static Mat identity(FieldPtr field, int n);
    static Mat zero(FieldPtr field, int rows, int cols) { return Mat(std::move(field), rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    const FieldValue& at(int r, int c) const;
    void set(int r, int c, FieldValue v);

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat transpose() const;
    Mat scaled(const FieldValue& c) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;

    /// Column c as an r x 1 matrix.
    Mat col(int c) const;

private:
    FieldPtr field_;
    int rows_, cols_;
    std::vector<FieldValue> a_;  // row-major
};

/// Exact X with A*X = B. A square: unique solution or Singular/Inconsistent.
/// A rectangular with full column rank: the unique solution when the system
/// is consistent, Inconsistent otherwise; Singular when columns are dependent.
Mat solve_exact(const Mat& A, const Mat& B);

/// Coefficients expressing `target` in the span of the given (independent)
/// vectors; every column of `target` is expressed. Throws NotInSpan when a
/// target column is outside the span.
Mat express_in_span(const std::vector<Mat>& vectors, const Mat& target);

int rank(const Mat& A);

/// Basis of the right kernel of A, as columns of the returned matrix.
Mat kernel_basis(const Mat& A);

/// Incremental echelon state for rank/extension bookkeeping during greedy
/// basis selection.
class EchelonBasis {
public:
    explicit EchelonBasis(FieldPtr field, int dim);
    /// Reduce v against the current rows; if a new pivot remains, absorb it
    /// and return true.
    bool try_add(const Mat& v);
    bool contains(const Mat& v) const;
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    FieldPtr field_;
    int dim_;
    std::vector<std::vector<FieldValue>> rows_;
    std::vector<int> pivots_;
};

/// Block partition of an r x r matrix: block (a, b) has row_sizes[a-1] rows
/// and col_sizes[b-1] columns (1-based block indices).
struct BlockShape {
    std::vector<int> row_sizes;
    std::vector<int> col_sizes;

    /// The skew k_*-block convention: row groups k_1..k_{m+1} top to bottom,
    /// column groups k_{m+1}..k_1 left to right, so block (a, b) is a
    /// k_a x k_{m+2-b} matrix.
    static BlockShape skew(const std::vector<int>& k);
    /// Plain symmetric grouping k_1..k_{m+1} on both sides.
    static BlockShape square(const std::vector<int>& k);

    int row_blocks() const { return static_cast<int>(row_sizes.size()); }
    int col_blocks() const { return static_cast<int>(col_sizes.size()); }
    int row_offset(int a) const;  // 1-based
    int col_offset(int b) const;
    int total_rows() const;
    int total_cols() const;
};

Mat block_get(const Mat& M, const BlockShape& shape, int a, int b);
void block_set(Mat& M, const BlockShape& shape, int a, int b, const Mat& value);

/// Inverse of a block upper-unitriangular matrix (identity diagonal blocks,
/// zero below) by back-substitution. block_sizes lists the diagonal block
/// sizes; zero sizes are allowed.
Mat block_unitriangular_inverse(const Mat& M, const std::vector<int>& block_sizes);

}  // namespace siegel
