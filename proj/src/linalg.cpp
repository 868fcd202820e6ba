#include "qbos/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qbos {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cd{0.0, 0.0}) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (data_.size() != rows * cols) throw std::invalid_argument("entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

cd ComplexMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace requires a square matrix");
    cd t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::all_finite() const {
    for (const cd& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cd a = (*this)(i, k);
            if (a == cd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

ComplexMatrix operator*(cd scale, const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (cd& z : out.data_) z *= scale;
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix compare dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - rhs.data_[i]));
    return worst;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cd& z : amp) s += std::norm(z);
    return std::sqrt(s);
}

StateVector StateVector::basis(std::size_t k) {
    if (k >= 4) throw std::invalid_argument("basis index out of range");
    StateVector v;
    v.amp[k] = 1.0;
    return v;
}

cd inner_product(const StateVector& bra, const StateVector& ket) {
    cd r = 0.0;
    for (std::size_t i = 0; i < 4; ++i) r += std::conj(bra[i]) * ket[i];
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cd aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("is_unitary requires a square matrix");
    const ComplexMatrix prod = m * m.dagger();
    return prod.max_abs_diff(ComplexMatrix::identity(m.rows())) <= tol;
}

StateVector apply(const ComplexMatrix& u, const StateVector& s) {
    if (u.rows() != 4 || u.cols() != 4) throw std::invalid_argument("apply expects a 4x4 operator");
    if (!is_unitary(u, kDefaultTol)) throw std::invalid_argument("apply expects a unitary operator");
    StateVector out;
    for (std::size_t i = 0; i < 4; ++i) {
        cd acc = 0.0;
        for (std::size_t j = 0; j < 4; ++j) acc += u(i, j) * s[j];
        out[i] = acc;
    }
    return out;
}

namespace {

// One cyclic-Jacobi sweep target: right-multiply by the plane rotation that
// zeroes the (p,q) entry of a Hermitian matrix.
ComplexMatrix jacobi_rotation(const ComplexMatrix& a, std::size_t p, std::size_t q) {
    const std::size_t n = a.rows();
    ComplexMatrix g = ComplexMatrix::identity(n);
    const cd apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return g;
    const cd phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    g(p, p) = c;
    g(p, q) = s;
    g(q, p) = -s * std::conj(phase);
    g(q, q) = c * std::conj(phase);
    return g;
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigensystem requires a square matrix");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    scale = std::max(scale, offdiag_norm(a));
    const double stop = std::max(scale, 1.0) * 1e-15;

    for (int sweep = 0; sweep < 60 && offdiag_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) <= stop / (double)(n * n)) continue;
                const ComplexMatrix g = jacobi_rotation(a, p, q);
                a = g.dagger() * a * g;
                v = v * g;
            }
    }

    EigenSystem out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return out.values[x] > out.values[y]; });

    EigenSystem sorted;
    sorted.values.resize(n);
    sorted.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted.values[k] = out.values[order[k]];
        for (std::size_t i = 0; i < n; ++i) sorted.vectors(i, k) = v(i, order[k]);
    }
    return sorted;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigensystem(m).values; }

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix mat, double tol) {
    if (mat.rows() != 4 || mat.cols() != 4) throw std::invalid_argument("density matrix must be 4x4");
    if (!mat.all_finite()) throw std::invalid_argument("density matrix entries must be finite");
    if (mat.max_abs_diff(mat.dagger()) > tol) throw std::invalid_argument("density matrix must be Hermitian");
    if (std::abs(mat.trace() - cd{1.0, 0.0}) > tol) throw std::invalid_argument("density matrix must have unit trace");
    for (double ev : hermitian_eigenvalues(mat))
        if (ev < -tol) throw std::invalid_argument("density matrix must be positive semidefinite");
    return DensityMatrix{std::move(mat)};
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix{std::move(m)};
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix{cd{0.25, 0.0} * ComplexMatrix::identity(4)}; }

double entanglement_entropy(const StateVector& s) {
    // reduced state of player A: rho(i,j) = sum_k s[2i+k] conj(s[2j+k])
    ComplexMatrix rho(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            cd acc = 0.0;
            for (std::size_t k = 0; k < 2; ++k) acc += s[2 * i + k] * std::conj(s[2 * j + k]);
            rho(i, j) = acc;
        }
    double entropy = 0.0;
    for (double p : hermitian_eigenvalues(rho))
        if (p > 1e-15) entropy -= p * std::log2(p);
    return std::clamp(entropy, 0.0, 1.0);
}

double state_fidelity(const DensityMatrix& rho, const StateVector& psi, double tol) {
    DensityMatrix::from_matrix(rho.m, tol);  // reject anything that is not a valid density matrix
    StateVector rho_psi;
    for (std::size_t i = 0; i < 4; ++i) {
        cd acc = 0.0;
        for (std::size_t j = 0; j < 4; ++j) acc += rho.m(i, j) * psi[j];
        rho_psi[i] = acc;
    }
    return inner_product(psi, rho_psi).real();
}

}  // namespace qbos
