#include "cubecalc/matrix.hpp"

#include <algorithm>
#include <cctype>

#include "cubecalc/errors.hpp"

namespace cubecalc {

std::string format_scalar(const Scalar& x) { return x.get_str(); }

Scalar parse_scalar(const std::string& text) {
  auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InputError("malformed rational '" + text + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw InputError("zero denominator in '" + text + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar(1)});
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Scalar>>& dense,
                          std::size_t cols) {
  Matrix m(dense.size(), cols);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].size() != cols)
      throw InputError("ragged matrix: row " + std::to_string(i) + " has " +
                       std::to_string(dense[i].size()) + " entries, expected " +
                       std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(dense[i][j]) != 0) m.data_[i].push_back({j, dense[i][j]});
  }
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Row& r) { return r.empty(); });
}

bool Matrix::is_integral() const {
  for (const auto& r : data_)
    for (const auto& e : r)
      if (e.value.get_den() != 1) return false;
  return true;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  const auto& r = data_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) return it->value;
  return Scalar(0);
}

namespace {

// Merges `scale * src` into the sorted row `dst`.
Matrix::Row axpy_row(const Matrix::Row& dst, const Matrix::Row& src,
                     const Scalar& scale) {
  Matrix::Row out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].col < src[j].col)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].col < dst[i].col) {
      out.push_back({src[j].col, scale * src[j].value});
      ++j;
    } else {
      Scalar v = dst[i].value + scale * src[j].value;
      if (sgn(v) != 0) out.push_back({dst[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw InvariantError("matrix product shape mismatch: " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " * " + std::to_string(rhs.rows_) + "x" +
                         std::to_string(rhs.cols_));
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Row acc;
    for (const auto& e : data_[i]) acc = axpy_row(acc, rhs.data_[e.col], e.value);
    out.data_[i] = std::move(acc);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw InvariantError("matrix sum shape mismatch");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    out.data_[i] = axpy_row(data_[i], rhs.data_[i], Scalar(1));
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw InvariantError("matrix difference shape mismatch");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    out.data_[i] = axpy_row(data_[i], rhs.data_[i], Scalar(-1));
  return out;
}

Matrix Matrix::operator-() const { return scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix out(rows_, cols_);
  if (sgn(c) == 0) return out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out.data_[i].reserve(data_[i].size());
    for (const auto& e : data_[i]) out.data_[i].push_back({e.col, c * e.value});
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) out.data_[e.col].push_back({i, e.value});
  return out;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw InvariantError("vector length mismatch");
  std::vector<Scalar> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) out[i] += e.value * v[e.col];
  return out;
}

std::vector<std::vector<Scalar>> Matrix::to_dense() const {
  std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) out[i][e.col] = e.value;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    const auto& x = a.data_[i];
    const auto& y = b.data_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].col != y[k].col || x[k].value != y[k].value) return false;
  }
  return true;
}

MatrixBuilder::MatrixBuilder(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), pending_(rows) {}

void MatrixBuilder::add(std::size_t row, std::size_t col, const Scalar& value) {
  if (row >= rows_ || col >= cols_)
    throw InvariantError("matrix builder index out of range");
  if (sgn(value) != 0) pending_[row].push_back({col, value});
}

void MatrixBuilder::add_block(std::size_t row0, std::size_t col0,
                              const Matrix& block, const Scalar& scale) {
  if (row0 + block.rows() > rows_ || col0 + block.cols() > cols_)
    throw InvariantError("matrix block out of range");
  if (sgn(scale) == 0) return;
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (const auto& e : block.row(i))
      pending_[row0 + i].push_back({col0 + e.col, scale * e.value});
}

Matrix MatrixBuilder::build() && {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto& p = pending_[i];
    std::stable_sort(p.begin(), p.end(),
                     [](const Matrix::Entry& a, const Matrix::Entry& b) {
                       return a.col < b.col;
                     });
    Matrix::Row row;
    for (auto& e : p) {
      if (!row.empty() && row.back().col == e.col) {
        row.back().value += e.value;
        if (sgn(row.back().value) == 0) row.pop_back();
      } else {
        row.push_back(std::move(e));
      }
    }
    m.data_[i] = std::move(row);
  }
  return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  MatrixBuilder out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.row(i))
      out.add_block(i * b.rows(), e.col * b.cols(), b, e.value);
  return std::move(out).build();
}

}  // namespace cubecalc
