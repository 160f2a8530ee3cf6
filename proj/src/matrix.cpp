#include "sumrank/matrix.hpp"

#include "sumrank/errors.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace sumrank {

OrderedPartition::OrderedPartition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidDimension("partition must have at least one part");
    for (const auto p : parts_)
        if (p == 0) throw InvalidDimension("partition parts must be positive");
    total_ = std::accumulate(parts_.begin(), parts_.end(), std::size_t{0});
}

OrderedPartition OrderedPartition::parse(const std::string& text) {
    std::vector<std::size_t> parts;
    std::string_view rest = text;
    while (true) {
        const auto pos = rest.find(',');
        const auto token = rest.substr(0, pos);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || v == 0)
            throw ParseError("invalid partition '" + text + "': parts must be positive integers");
        parts.push_back(v);
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return OrderedPartition(std::move(parts));
}

std::size_t OrderedPartition::min_part() const noexcept { return *std::min_element(parts_.begin(), parts_.end()); }
std::size_t OrderedPartition::max_part() const noexcept { return *std::max_element(parts_.begin(), parts_.end()); }

std::string OrderedPartition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

FqMatrix::FqMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : FqMatrix(std::move(field), rows, cols, std::vector<FqElem>(rows * cols)) {}

FqMatrix::FqMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<FqElem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw InvalidDimension("matrix dimensions must be positive");
    if (entries_.size() != rows_ * cols_) throw InvalidDimension("entry count does not match shape");
    for (const auto v : entries_)
        if (!field_->is_canonical(v)) throw InvalidDimension("non-canonical matrix entry");
}

FqMatrix::FqMatrix(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows)
    : FqMatrix(field, rows.size(), rows.empty() ? 0 : rows.front().size(), [&] {
          std::vector<FqElem> out;
          for (const auto& r : rows) {
              if (r.size() != rows.front().size()) throw InvalidDimension("ragged matrix literal");
              for (const auto v : r) out.push_back(FqElem{v});
          }
          return out;
      }()) {}

FqMatrix FqMatrix::identity(FieldPtr field, std::size_t n) {
    FqMatrix out(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) out.entries_[i * n + i] = FieldSpec::one();
    return out;
}

void FqMatrix::set(std::size_t i, std::size_t j, FqElem v) {
    if (!field_->is_canonical(v)) throw InvalidDimension("non-canonical matrix entry");
    entries_.at(i * cols_ + j) = v;
}

FqMatrix FqMatrix::transpose() const {
    std::vector<FqElem> out(entries_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = entries_[i * cols_ + j];
    return FqMatrix(field_, cols_, rows_, std::move(out));
}

FqMatrix FqMatrix::column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw InvalidDimension("column block out of range");
    std::vector<FqElem> out;
    out.reserve(rows_ * count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = first; j < first + count; ++j) out.push_back(entries_[i * cols_ + j]);
    return FqMatrix(field_, rows_, count, std::move(out));
}

FqMatrix FqMatrix::operator*(const FqMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidDimension("matrix product shape mismatch");
    if (field_->q() != rhs.field_->q()) throw InvalidDimension("matrix product over different fields");
    const auto& f = *field_;
    std::vector<FqElem> out(rows_ * rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const FqElem a = entries_[i * cols_ + k];
            if (a.value == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                auto& dst = out[i * rhs.cols_ + j];
                dst = f.add(dst, f.mul(a, rhs.entries_[k * rhs.cols_ + j]));
            }
        }
    }
    return FqMatrix(field_, rows_, rhs.cols_, std::move(out));
}

std::vector<std::size_t> reduce_row_echelon(const FieldSpec& f, std::vector<FqElem>& a, std::size_t rows,
                                            std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot * cols + c].value == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        const FqElem scale = f.inv(a[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], scale);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const FqElem factor = a[i * cols + c];
            if (factor.value == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const FqMatrix& a) {
    std::vector<FqElem> work(a.entries().begin(), a.entries().end());
    return reduce_row_echelon(a.field(), work, a.rows(), a.cols()).size();
}

std::vector<FqVector> column_space_basis(const FqMatrix& a) {
    const FqMatrix t = a.transpose();
    std::vector<FqElem> work(t.entries().begin(), t.entries().end());
    const auto pivots = reduce_row_echelon(a.field(), work, t.rows(), t.cols());
    std::vector<FqVector> basis;
    basis.reserve(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        basis.emplace_back(work.begin() + static_cast<std::ptrdiff_t>(i * t.cols()),
                           work.begin() + static_cast<std::ptrdiff_t>((i + 1) * t.cols()));
    return basis;
}

std::vector<FqMatrix> blocks(const FqMatrix& a, const OrderedPartition& p) {
    if (p.total() != a.cols())
        throw PartitionMismatch("partition sums to " + std::to_string(p.total()) + " but matrix has " +
                                std::to_string(a.cols()) + " columns");
    std::vector<FqMatrix> out;
    out.reserve(p.length());
    std::size_t first = 0;
    for (const auto width : p.parts()) {
        out.push_back(a.column_block(first, width));
        first += width;
    }
    return out;
}

std::size_t sum_rank_weight(const FqMatrix& a, const OrderedPartition& p) {
    std::size_t total = 0;
    for (const auto& b : blocks(a, p)) total += rank(b);
    return total;
}

FqMatrix read_matrix(std::istream& in) {
    std::string line;
    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
        }
        throw ParseError("unexpected end of matrix input");
    };
    std::istringstream header(next_line());
    std::uint64_t q = 0;
    std::size_t m = 0, n = 0;
    if (!(header >> q >> m >> n)) throw ParseError("matrix header must be 'q m n'");
    auto field = FieldSpec::make(q);
    if (m == 0 || n == 0) throw ParseError("matrix dimensions must be positive");
    std::vector<FqElem> entries;
    entries.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        std::istringstream row(next_line());
        std::string token;
        std::size_t count = 0;
        while (row >> token) {
            entries.push_back(field->decode(token));
            ++count;
        }
        if (count != n)
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(count) + " entries, expected " +
                             std::to_string(n));
    }
    return FqMatrix(field, m, n, std::move(entries));
}

void write_matrix(std::ostream& out, const FqMatrix& a) {
    out << a.field().q() << ' ' << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << a.field().encode(a(i, j));
        }
        out << '\n';
    }
}

} // namespace sumrank
