#pragma once

// Dense-matrix reference implementations used as an independent oracle for
// the statevector simulator and the circuit forward pass. Everything here is
// built from explicit Kronecker products and full 2^n x 2^n matrix-vector
// multiplies; nothing is shared with the code under test.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;  // dense, row-major
using Vector = std::vector<Complex>;

inline Matrix zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Complex>(cols));
}

inline Matrix identity(std::size_t dim) {
  Matrix m = zeros(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ar = a.size(), ac = a[0].size();
  const std::size_t br = b.size(), bc = b[0].size();
  Matrix m = zeros(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i) {
    for (std::size_t j = 0; j < ac; ++j) {
      for (std::size_t k = 0; k < br; ++k) {
        for (std::size_t l = 0; l < bc; ++l) {
          m[i * br + k][j * bc + l] = a[i][j] * b[k][l];
        }
      }
    }
  }
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b[0].size(), inner = b.size();
  Matrix out = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex aik = a[i][k];
      for (std::size_t j = 0; j < m; ++j) out[i][j] += aik * b[k][j];
    }
  }
  return out;
}

inline Vector matvec(const Matrix& m, const Vector& v) {
  Vector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
    out[i] = acc;
  }
  return out;
}

inline Matrix ry(double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  return {{c, -s}, {s, c}};
}

inline Matrix rz(double angle) {
  return {{std::polar(1.0, -angle / 2.0), 0.0},
          {0.0, std::polar(1.0, angle / 2.0)}};
}

inline Matrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }

// Places a 2x2 gate on one wire. Qubit 0 is the most significant index bit,
// so the full operator is I(2^q) (x) u (x) I(2^(n-1-q)).
inline Matrix single_qubit_gate(const Matrix& u, int qubit, int n_qubits) {
  Matrix m = identity(std::size_t{1} << qubit);
  m = kron(m, u);
  m = kron(m, identity(std::size_t{1} << (n_qubits - 1 - qubit)));
  return m;
}

// CNOT as the projector sum |0><0|_c (x) I + |1><1|_c (x) X_t, assembled
// wire by wire from qubit 0 (MSB) to qubit n-1.
inline Matrix cnot(int control, int target, int n_qubits) {
  const Matrix p0{{1.0, 0.0}, {0.0, 0.0}};
  const Matrix p1{{0.0, 0.0}, {0.0, 1.0}};
  Matrix keep{{1.0}};
  Matrix flip{{1.0}};
  for (int q = 0; q < n_qubits; ++q) {
    const Matrix& keep_wire = (q == control) ? p0 : identity(2);
    keep = kron(keep, keep_wire);
    const Matrix& flip_wire =
        (q == control) ? p1 : (q == target ? pauli_x() : identity(2));
    flip = kron(flip, flip_wire);
  }
  Matrix m = keep;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += flip[i][j];
  }
  return m;
}

// L2-normalized zero-padded embedding, written independently of the library.
inline Vector embed(const std::vector<double>& features, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  double norm2 = 0.0;
  for (double f : features) norm2 += f * f;
  const double inv = 1.0 / std::sqrt(norm2);
  Vector v(dim);
  for (std::size_t k = 0; k < features.size(); ++k) v[k] = features[k] * inv;
  return v;
}

// Full unitary of one variational layer: the CNOT ring followed by the
// RZ/RY/RZ triple on every qubit, angles laid out (qubit, slot).
inline Matrix layer_unitary(const std::vector<double>& layer_angles,
                            int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  Matrix u = identity(dim);
  for (int i = 0; i < n_qubits; ++i) {
    u = matmul(cnot(i, (i + 1) % n_qubits, n_qubits), u);
  }
  for (int q = 0; q < n_qubits; ++q) {
    u = matmul(single_qubit_gate(rz(layer_angles[q * 3 + 0]), q, n_qubits), u);
    u = matmul(single_qubit_gate(ry(layer_angles[q * 3 + 1]), q, n_qubits), u);
    u = matmul(single_qubit_gate(rz(layer_angles[q * 3 + 2]), q, n_qubits), u);
  }
  return u;
}

inline double z_expectation(const Vector& state, int qubit, int n_qubits) {
  const std::size_t mask = std::size_t{1} << (n_qubits - 1 - qubit);
  double value = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    value += std::norm(state[i]) * ((i & mask) ? -1.0 : 1.0);
  }
  return value;
}

}  // namespace oracle
