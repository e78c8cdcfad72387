#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qevo {

using Complex = std::complex<double>;

// Dense statevector of an n-qubit register.
//
// Bit convention, fixed for the whole library: qubit 0 is the most
// significant bit of the basis-state index, so |q0 q1 ... q_{n-1}> sits at
// index sum_i q_i * 2^(n-1-i). Every gate, embedding and measurement below
// follows this ordering.
struct StateVector {
  int n_qubits = 0;
  std::vector<Complex> amps;

  std::size_t dim() const { return amps.size(); }
};

inline constexpr int kMaxQubits = 20;  // dense simulation cap

namespace detail {

inline std::size_t qubit_mask(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

inline void check_qubit(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw std::invalid_argument("qubit index out of range");
  }
}

}  // namespace detail

// |00...0>
inline StateVector new_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in [1, 20]");
  }
  StateVector state{n_qubits,
                    std::vector<Complex>(std::size_t{1} << n_qubits)};
  state.amps[0] = 1.0;
  return state;
}

// Zero-pads the feature vector to length 2^n_qubits and L2-normalizes it
// into the amplitudes, so amplitude k = padded[k] / ||padded||_2.
inline StateVector amplitude_embed(std::span<const double> features,
                                   int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in [1, 20]");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (features.empty() || features.size() > dim) {
    throw std::invalid_argument("feature count must be in [1, 2^n_qubits]");
  }
  double norm2 = 0.0;
  for (double f : features) norm2 += f * f;
  if (norm2 == 0.0) {
    throw std::domain_error("cannot embed an all-zero feature vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  StateVector state{n_qubits, std::vector<Complex>(dim)};
  for (std::size_t k = 0; k < features.size(); ++k) {
    state.amps[k] = features[k] * inv;
  }
  return state;
}

// 2x2 unitary, row-major.
struct Mat2 {
  Complex m00, m01, m10, m11;
};

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

// RY(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
inline Mat2 ry_matrix(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return {c, -s, s, c};
}

// RZ(t) = diag(exp(-it/2), exp(it/2))
inline Mat2 rz_matrix(double angle) {
  return {std::polar(1.0, -angle / 2.0), 0.0, 0.0,
          std::polar(1.0, angle / 2.0)};
}

inline void apply_1q(StateVector& state, int qubit, const Mat2& u) {
  detail::check_qubit(state, qubit);
  const std::size_t mask = detail::qubit_mask(state.n_qubits, qubit);
  const std::size_t n = state.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & mask) == 0) {
      const std::size_t j = i | mask;
      const Complex a0 = state.amps[i];
      const Complex a1 = state.amps[j];
      state.amps[i] = u.m00 * a0 + u.m01 * a1;
      state.amps[j] = u.m10 * a0 + u.m11 * a1;
    }
  }
}

inline void apply_ry(StateVector& state, int qubit, double angle) {
  apply_1q(state, qubit, ry_matrix(angle));
}

inline void apply_rz(StateVector& state, int qubit, double angle) {
  apply_1q(state, qubit, rz_matrix(angle));
}

// Flips the target bit of every basis state whose control bit is set.
inline void apply_cnot(StateVector& state, int control, int target) {
  detail::check_qubit(state, control);
  detail::check_qubit(state, target);
  if (control == target) {
    throw std::invalid_argument("cnot control and target must differ");
  }
  const std::size_t cm = detail::qubit_mask(state.n_qubits, control);
  const std::size_t tm = detail::qubit_mask(state.n_qubits, target);
  const std::size_t n = state.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & cm) != 0 && (i & tm) == 0) {
      std::swap(state.amps[i], state.amps[i | tm]);
    }
  }
}

// <Z> on one qubit: sum_k |amp_k|^2 * (+1 if the qubit bit is 0, else -1).
// Exact, no sampling.
inline double expectation_z(const StateVector& state, int qubit) {
  detail::check_qubit(state, qubit);
  const std::size_t mask = detail::qubit_mask(state.n_qubits, qubit);
  double value = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state.amps[i]);
    value += (i & mask) ? -p : p;
  }
  return value;
}

inline double l2_norm(const StateVector& state) {
  double norm2 = 0.0;
  for (const Complex& a : state.amps) norm2 += std::norm(a);
  return std::sqrt(norm2);
}

}  // namespace qevo
