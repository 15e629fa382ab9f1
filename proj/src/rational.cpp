#include "meandim/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace meandim {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt::from_string(s));
    return Rational(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    if (x == 0.0) return Rational();
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    return Rational(mant) * pow2(exp);
}

Rational Rational::pow2(int k) {
    if (k >= 0) return Rational(BigInt::pow2(static_cast<unsigned>(k)));
    return Rational(BigInt(1), BigInt::pow2(static_cast<unsigned>(-k)));
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

bool Rational::operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }

bool Rational::operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }

Rational Rational::abs() const {
    Rational r = *this;
    r.num_ = r.num_.abs();
    return r;
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.sign() < 0 && !r.is_zero()) q = q - BigInt(1);
    return q;
}

double Rational::to_double() const {
    // Scale so both parts stay in double range before dividing.
    std::size_t nb = num_.bit_length(), db = den_.bit_length();
    if (nb < 900 && db < 900) return num_.to_double() / den_.to_double();
    long shift = static_cast<long>(std::max(nb, db)) - 512;
    BigInt two = BigInt::pow2(static_cast<unsigned>(shift));
    return (num_ / two).to_double() / (den_ / two).to_double();
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace meandim
