// Dense complex linear algebra for 2- and 4-dimensional quantum objects.
// Everything in this project (gates, states, density matrices) is built on
// the small types here; no external linear algebra library is used.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qbos {

using cd = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

// Dense row-major complex matrix. The quantum objects in this project are
// 2x2 and 4x4; kron() of such matrices may produce larger ones in tests.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix dagger() const;
    ComplexMatrix transpose() const;
    cd trace() const;
    bool all_finite() const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    friend ComplexMatrix operator*(cd scale, const ComplexMatrix& m);

    // max-norm of the entrywise difference
    double max_abs_diff(const ComplexMatrix& rhs) const;

  private:
    std::size_t rows_, cols_;
    std::vector<cd> data_;
};

// Four complex amplitudes on the basis |OO>, |OT>, |TO>, |TT>; the first
// tensor factor is player A.
struct StateVector {
    std::array<cd, 4> amp{};

    cd& operator[](std::size_t i) { return amp[i]; }
    const cd& operator[](std::size_t i) const { return amp[i]; }

    double norm() const;
    static StateVector basis(std::size_t k);
};

cd inner_product(const StateVector& bra, const StateVector& ket);

// 4x4 density matrix. from_matrix() enforces Hermiticity, unit trace and
// positive semidefiniteness (within tol) and throws otherwise.
struct DensityMatrix {
    ComplexMatrix m;

    static DensityMatrix from_matrix(ComplexMatrix mat, double tol = kDefaultTol);
    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed();
};

// Kronecker product with index convention (i*rowsB + k, j*colsB + l) = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// true iff max-norm of (m * m^dag - I) <= tol; throws if m is not square
bool is_unitary(const ComplexMatrix& m, double tol);

// u * s for a 4x4 unitary u; rejects non-unitary u (tolerance 1e-10)
StateVector apply(const ComplexMatrix& u, const StateVector& s);

// Von Neumann entropy (in bits) of the reduced state of player A, obtained
// by tracing out player B. 0 for product states, 1 for maximally entangled.
double entanglement_entropy(const StateVector& s);

// <psi| rho |psi>; rho is validated as a density matrix first
double state_fidelity(const DensityMatrix& rho, const StateVector& psi, double tol = kDefaultTol);

// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Eigenvalues are sorted in descending order; vectors(i, k) is component i
// of the k-th eigenvector.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace qbos
