#pragma once

// Dense matrices over GF(q) and their sum-rank weight with respect to a
// partition of the columns into consecutive blocks.

#include "sumrank/field.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sumrank {

/// Ordered tuple (n_1, ..., n_l) of positive integers.
class OrderedPartition {
public:
    /// Throws InvalidDimension if empty or some part is zero.
    explicit OrderedPartition(std::vector<std::size_t> parts);

    /// Parses "a,b,c". Throws ParseError.
    [[nodiscard]] static OrderedPartition parse(const std::string& text);

    [[nodiscard]] const std::vector<std::size_t>& parts() const noexcept { return parts_; }
    [[nodiscard]] std::size_t total() const noexcept { return total_; }
    [[nodiscard]] std::size_t length() const noexcept { return parts_.size(); }
    [[nodiscard]] std::size_t operator[](std::size_t i) const { return parts_[i]; }
    [[nodiscard]] std::size_t min_part() const noexcept;
    [[nodiscard]] std::size_t max_part() const noexcept;

    [[nodiscard]] std::string to_string() const; // "a,b,c"

    friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
    friend auto operator<=>(const OrderedPartition& a, const OrderedPartition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<std::size_t> parts_;
    std::size_t total_ = 0;
};

class FqMatrix {
public:
    /// Zero matrix. Throws InvalidDimension when rows or cols is zero.
    FqMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
    /// Row-major entries; every entry must be canonical.
    FqMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<FqElem> entries);
    /// Convenience for literals: rows of raw element encodings.
    FqMatrix(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);

    [[nodiscard]] static FqMatrix identity(FieldPtr field, std::size_t n);

    [[nodiscard]] const FieldSpec& field() const noexcept { return *field_; }
    [[nodiscard]] const FieldPtr& field_ptr() const noexcept { return field_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] FqElem operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, FqElem v);
    [[nodiscard]] std::span<const FqElem> entries() const noexcept { return entries_; }

    [[nodiscard]] FqMatrix transpose() const;
    /// Columns [first, first + count) as a new matrix.
    [[nodiscard]] FqMatrix column_block(std::size_t first, std::size_t count) const;
    [[nodiscard]] FqMatrix operator*(const FqMatrix& rhs) const;

    friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
        return a.field_->q() == b.field_->q() && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }

private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FqElem> entries_;
};

/// Column vector of length m.
using FqVector = std::vector<FqElem>;

/// Brings the matrix to reduced row echelon form in place and returns the
/// pivot columns. Pivot search takes the first nonzero entry in each column.
std::vector<std::size_t> reduce_row_echelon(const FieldSpec& field, std::vector<FqElem>& entries,
                                            std::size_t rows, std::size_t cols);

[[nodiscard]] std::size_t rank(const FqMatrix& a);

/// Canonical basis of the column space: the nonzero rows of the reduced row
/// echelon form of A^T, read as column vectors. Equal column spaces give
/// identical lists.
[[nodiscard]] std::vector<FqVector> column_space_basis(const FqMatrix& a);

/// The consecutive column blocks of A, as copies. Throws PartitionMismatch
/// when the partition does not sum to A.cols().
[[nodiscard]] std::vector<FqMatrix> blocks(const FqMatrix& a, const OrderedPartition& p);

/// Sum of the block ranks. Throws PartitionMismatch.
[[nodiscard]] std::size_t sum_rank_weight(const FqMatrix& a, const OrderedPartition& p);

/// Text format: first line "q m n", then m lines of n entry encodings.
[[nodiscard]] FqMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const FqMatrix& a);

} // namespace sumrank
