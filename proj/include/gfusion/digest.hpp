#pragma once

// Stable 64-bit digest of a frame: FNV-1a over the canonicalized data
// (dimensions, ids, weights, basis and operator entries as IEEE-754 bit
// patterns, little-endian).  Two frames digest equal iff their canonical
// bytes are identical, which is the determinism contract the generator and
// the report files rely on.

#include <cstdint>
#include <cstring>
#include <string>

#include "gfusion/model.hpp"

namespace gfusion {

namespace detail {

class Fnv1a {
 public:
  void bytes(const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= b[i];
      h_ *= 0x100000001B3ULL;
    }
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    bytes(b, 8);
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  void scalar(double v) { f64(v); }
  void scalar(const std::complex<double>& v) {
    f64(v.real());
    f64(v.imag());
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

}  // namespace detail

template <ScalarType T>
std::string frame_digest(const GFusionFrame<T>& frame) {
  detail::Fnv1a h;
  h.u64(1);  // format version
  h.u64(is_complex_v<T> ? 2 : 1);
  h.u64(static_cast<std::uint64_t>(frame.dim()));
  h.u64(static_cast<std::uint64_t>(frame.n_atoms()));
  for (int i = 0; i < frame.n_atoms(); ++i) {
    const auto& a = frame.atom(i);
    h.str(a.id);
    h.f64(a.mu);
    h.f64(a.omega);
    const auto& u = frame.subspace(i).basis();
    h.u64(static_cast<std::uint64_t>(u.cols()));
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      for (Eigen::Index r = 0; r < u.rows(); ++r) h.scalar(u(r, c));
    const auto& l = frame.local(i).matrix();
    h.u64(static_cast<std::uint64_t>(l.rows()));
    for (Eigen::Index r = 0; r < l.rows(); ++r)
      for (Eigen::Index c = 0; c < l.cols(); ++c) h.scalar(l(r, c));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
  return std::string(buf);
}

}  // namespace gfusion
