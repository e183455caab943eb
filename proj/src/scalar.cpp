#include "dkp/scalar.hpp"

#include <cmath>

namespace dkp {

GaussianRational GaussianRational::ratio(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return GaussianRational(std::move(q));
}

double GaussianRational::magnitude() const {
  return std::hypot(re_.get_d(), im_.get_d());
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("GaussianRational: division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  os << z.re_;
  if (sgn(z.im_) != 0) os << (sgn(z.im_) > 0 ? "+" : "") << z.im_ << "i";
  return os;
}

}  // namespace dkp
