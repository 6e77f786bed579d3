#include "selord/quadratic_field.hpp"

#include <stdexcept>

namespace selord {

QuadraticField::QuadraticField(const Integer& d) : d_(d) {
  if (mod(d, Integer(4)) == 1) {
    t_ = 1;
    n_ = (1 - d) / 4;
  } else if (mod(d, Integer(4)) == 0) {
    t_ = 0;
    n_ = -d / 4;
  } else {
    throw std::invalid_argument("QuadraticField: discriminant must be 0 or 1 mod 4");
  }
}

QuadraticNumber QuadraticField::add(const QuadraticNumber& x, const QuadraticNumber& y) const {
  return {x.u + y.u, x.v + y.v};
}

QuadraticNumber QuadraticField::sub(const QuadraticNumber& x, const QuadraticNumber& y) const {
  return {x.u - y.u, x.v - y.v};
}

QuadraticNumber QuadraticField::neg(const QuadraticNumber& x) const { return {-x.u, -x.v}; }

QuadraticNumber QuadraticField::mul(const QuadraticNumber& x, const QuadraticNumber& y) const {
  Rational vv = x.v * y.v;
  return {x.u * y.u - vv * n_, x.u * y.v + x.v * y.u + vv * t_};
}

QuadraticNumber QuadraticField::conjugate(const QuadraticNumber& x) const {
  return {x.u + x.v * t_, -x.v};
}

Rational QuadraticField::norm(const QuadraticNumber& x) const {
  return x.u * x.u + t_ * x.u * x.v + n_ * x.v * x.v;
}

QuadraticNumber QuadraticField::inverse(const QuadraticNumber& x) const {
  if (x.is_zero()) throw std::domain_error("QuadraticField: inverse of zero");
  Rational nx = norm(x);
  QuadraticNumber c = conjugate(x);
  return {c.u / nx, c.v / nx};
}

std::string QuadraticField::to_string(const QuadraticNumber& x) const {
  if (x.v == 0) return x.u.get_str();
  std::string s = x.u == 0 ? "" : x.u.get_str() + (x.v > 0 ? "+" : "");
  return s + x.v.get_str() + "w";
}

}  // namespace selord
