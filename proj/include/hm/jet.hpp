#pragma once

#include <cmath>
#include <complex>

// First-order jets (value, d/dx, d/dy) over double, complex or 3-vectors.
// All field evaluators in this library return jets so that gradients of
// composite expressions come out of plain arithmetic.

namespace hm {

using Cx = std::complex<double>;

template <class T> struct Jet {
  T v{}, dx{}, dy{};

  Jet() = default;
  Jet(T val) : v(val) {}
  Jet(T val, T ddx, T ddy) : v(val), dx(ddx), dy(ddy) {}
};

using RJet = Jet<double>;
using CJet = Jet<Cx>;

template <class T> Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
  return {a.v + b.v, a.dx + b.dx, a.dy + b.dy};
}
template <class T> Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
  return {a.v - b.v, a.dx - b.dx, a.dy - b.dy};
}
template <class T> Jet<T> operator-(const Jet<T>& a) { return {-a.v, -a.dx, -a.dy}; }
template <class T> Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
}
template <class T> Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  T q = a.v / b.v;
  return {q, (a.dx - q * b.dx) / b.v, (a.dy - q * b.dy) / b.v};
}
template <class T, class S> Jet<T> operator*(S s, const Jet<T>& a) {
  return {s * a.v, s * a.dx, s * a.dy};
}
template <class T, class S> Jet<T> operator*(const Jet<T>& a, S s) { return s * a; }
template <class T, class S> Jet<T> operator/(const Jet<T>& a, S s) {
  return {a.v / s, a.dx / s, a.dy / s};
}
template <class T> Jet<T> operator+(const Jet<T>& a, T s) { return {a.v + s, a.dx, a.dy}; }
template <class T> Jet<T> operator+(T s, const Jet<T>& a) { return a + s; }
template <class T> Jet<T> operator-(const Jet<T>& a, T s) { return {a.v - s, a.dx, a.dy}; }
template <class T> Jet<T> operator-(T s, const Jet<T>& a) { return {s - a.v, -a.dx, -a.dy}; }

inline CJet cjet(const RJet& a) { return {Cx(a.v), Cx(a.dx), Cx(a.dy)}; }
inline CJet operator*(const RJet& a, const CJet& b) { return cjet(a) * b; }
inline CJet operator*(const CJet& a, const RJet& b) { return a * cjet(b); }

inline CJet conj(const CJet& a) {
  return {std::conj(a.v), std::conj(a.dx), std::conj(a.dy)};
}
inline RJet real(const CJet& a) { return {a.v.real(), a.dx.real(), a.dy.real()}; }
inline RJet imag(const CJet& a) { return {a.v.imag(), a.dx.imag(), a.dy.imag()}; }
// |w|^2 as a real jet
inline RJet abs2(const CJet& a) { return real(conj(a) * a); }
inline RJet sqrt(const RJet& a) {
  double s = std::sqrt(a.v);
  return {s, a.dx / (2.0 * s), a.dy / (2.0 * s)};
}
inline RJet log(const RJet& a) { return {std::log(a.v), a.dx / a.v, a.dy / a.v}; }

struct Vec3 {
  double x{}, y{}, z{};
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};
inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct VJet {
  Vec3 v{}, dx{}, dy{};

  VJet operator+(const VJet& o) const { return {v + o.v, dx + o.dx, dy + o.dy}; }
  VJet operator-(const VJet& o) const { return {v - o.v, dx - o.dx, dy - o.dy}; }
  VJet operator-() const { return {-v, -dx, -dy}; }
};
inline VJet operator*(const RJet& s, const VJet& a) {
  return {s.v * a.v, s.dx * a.v + s.v * a.dx, s.dy * a.v + s.v * a.dy};
}
inline VJet operator*(double s, const VJet& a) { return {s * a.v, s * a.dx, s * a.dy}; }
inline RJet dot(const VJet& a, const VJet& b) {
  return {dot(a.v, b.v), dot(a.dx, b.v) + dot(a.v, b.dx), dot(a.dy, b.v) + dot(a.v, b.dy)};
}
inline VJet cross(const VJet& a, const VJet& b) {
  return {cross(a.v, b.v), cross(a.dx, b.v) + cross(a.v, b.dx),
          cross(a.dy, b.v) + cross(a.v, b.dy)};
}

// Assemble an S^2-valued jet from the complex (s1+is2) and real (s3) parts.
inline VJet vjet_from(const CJet& c, const RJet& h) {
  return {{c.v.real(), c.v.imag(), h.v},
          {c.dx.real(), c.dx.imag(), h.dx},
          {c.dy.real(), c.dy.imag(), h.dy}};
}

} // namespace hm
