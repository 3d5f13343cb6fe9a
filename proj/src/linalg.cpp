#include "nccc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nccc {

QMatrix QMatrix::identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows, std::size_t cols)
{
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("QMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

QVec QMatrix::row(std::size_t r) const
{
    return QVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVec QMatrix::col(std::size_t c) const
{
    QVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

QMatrix QMatrix::operator*(const QMatrix& other) const
{
    if (cols_ != other.rows_)
        throw std::invalid_argument("QMatrix: product dimension mismatch");
    QMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Q& a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                if (sgn(other(k, j)) != 0)
                    out(i, j) += a * other(k, j);
        }
    return out;
}

QVec QMatrix::operator*(const QVec& v) const
{
    if (cols_ != v.size())
        throw std::invalid_argument("QMatrix: vector dimension mismatch");
    QVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (sgn((*this)(i, k)) != 0 && sgn(v[k]) != 0)
                out[i] += (*this)(i, k) * v[k];
    return out;
}

bool QMatrix::operator==(const QMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool QMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Q& q) { return sgn(q) == 0; });
}

QMatrix QMatrix::transpose() const
{
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::kron(const QMatrix& other) const
{
    QMatrix out(rows_ * other.rows_, cols_ * other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Q& a = (*this)(i, j);
            if (sgn(a) == 0)
                continue;
            for (std::size_t k = 0; k < other.rows_; ++k)
                for (std::size_t l = 0; l < other.cols_; ++l)
                    out(i * other.rows_ + k, j * other.cols_ + l) = a * other(k, l);
        }
    return out;
}

std::vector<std::size_t> rref(QMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            Q f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (sgn(m(r, j)) != 0)
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<QVec> nullspace(const QMatrix& m)
{
    QMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<QVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        QVec v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMatrix& m, const QVec& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        return std::nullopt;
    QVec x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug(i, m.cols());
    return x;
}

Q determinant(QMatrix m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: non-square matrix");
    Q det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0)
                continue;
            Q f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::vector<std::size_t> complete_basis(const std::vector<QVec>& vectors,
                                        const std::vector<QVec>& candidates,
                                        std::size_t dim)
{
    std::vector<QVec> rows;
    for (const auto& v : vectors)
        rows.push_back(v);
    std::size_t current = rows.empty() ? 0 : rank(QMatrix::from_rows(rows, dim));
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        rows.push_back(candidates[i]);
        std::size_t r = rank(QMatrix::from_rows(rows, dim));
        if (r > current) {
            current = r;
            chosen.push_back(i);
        } else {
            rows.pop_back();
        }
    }
    return chosen;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Q& v)
{
    if (r >= rows || c >= cols)
        throw std::out_of_range("SparseMatrix::add");
    if (sgn(v) != 0)
        row_entries[r].emplace_back(c, v);
}

void SparseMatrix::finalize()
{
    for (auto& row : row_entries) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<std::size_t, Q>> merged;
        for (auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& e) { return sgn(e.second) == 0; }),
                     merged.end());
        row = std::move(merged);
    }
}

QMatrix SparseMatrix::to_dense() const
{
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (const auto& [c, v] : row_entries[r])
            m(r, c) += v;
    return m;
}

bool SparseMatrix::is_zero() const
{
    for (const auto& row : row_entries)
        for (const auto& e : row)
            if (sgn(e.second) != 0)
                return false;
    return true;
}

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Q>>;

// row -= f * pivot, both sorted by column.
SparseRow axpy(const SparseRow& row, const Q& f, const SparseRow& pivot)
{
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -f * pivot[j].second);
            ++j;
        } else {
            Q v = row[i].second - f * pivot[j].second;
            if (sgn(v) != 0)
                out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

std::size_t sparse_rank(const SparseMatrix& m)
{
    SparseMatrix work = m;
    work.finalize();
    std::vector<std::size_t> order(work.rows);
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return work.row_entries[a].size() < work.row_entries[b].size();
    });
    std::map<std::size_t, SparseRow> pivots;
    for (std::size_t idx : order) {
        SparseRow row = std::move(work.row_entries[idx]);
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                Q inv = 1 / row.front().second;
                for (auto& e : row)
                    e.second *= inv;
                pivots.emplace(row.front().first, std::move(row));
                break;
            }
            Q f = row.front().second;
            row = axpy(row, f, it->second);
        }
    }
    return pivots.size();
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols != b.rows)
        throw std::invalid_argument("multiply: dimension mismatch");
    SparseMatrix out(a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (const auto& [k, v] : a.row_entries[r])
            for (const auto& [c, w] : b.row_entries[k])
                out.add(r, c, v * w);
    out.finalize();
    return out;
}

ChainComplexQ::ChainComplexQ(std::vector<std::size_t> dims, std::vector<SparseMatrix> differentials)
    : dims_(std::move(dims)), differentials_(std::move(differentials))
{
    if (!dims_.empty() && differentials_.size() + 1 != dims_.size())
        throw std::invalid_argument("ChainComplexQ: need dims.size()-1 differentials");
    for (std::size_t k = 0; k < differentials_.size(); ++k) {
        if (differentials_[k].cols != dims_[k] || differentials_[k].rows != dims_[k + 1])
            throw std::invalid_argument("ChainComplexQ: differential shape mismatch");
        differentials_[k].finalize();
    }
}

bool ChainComplexQ::is_complex() const
{
    for (std::size_t k = 0; k + 1 < differentials_.size(); ++k)
        if (!multiply(differentials_[k + 1], differentials_[k]).is_zero())
            return false;
    return true;
}

std::vector<std::size_t> ChainComplexQ::cohomology() const
{
    std::vector<std::size_t> ranks(differentials_.size());
    for (std::size_t k = 0; k < differentials_.size(); ++k)
        ranks[k] = sparse_rank(differentials_[k]);
    std::vector<std::size_t> h(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        std::size_t out = k < ranks.size() ? ranks[k] : 0;
        std::size_t in = k > 0 ? ranks[k - 1] : 0;
        h[k] = dims_[k] - out - in;
    }
    return h;
}

long ChainComplexQ::euler_characteristic() const
{
    long chi = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dims_[k]);
    return chi;
}

GradedDims pad_dims(GradedDims d, std::size_t length)
{
    while (d.size() > length && d.back() == 0)
        d.pop_back();
    if (d.size() < length)
        d.resize(length, 0);
    return d;
}

long euler_characteristic(const GradedDims& d)
{
    long chi = 0;
    for (std::size_t k = 0; k < d.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(d[k]);
    return chi;
}

bool all_zero(const GradedDims& d)
{
    return std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 0; });
}

}  // namespace nccc
