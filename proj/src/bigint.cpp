#include "meandim/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meandim {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? 0ull - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
    if (m >> 32) mag_.push_back(static_cast<std::uint32_t>(m >> 32));
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int m = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? m : -m;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[big.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (d < 0) {
            d += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = r[k] + carry;
            r[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::mul_small(const std::vector<std::uint32_t>& a, std::uint32_t m) {
    if (a.empty() || m == 0) return {};
    std::vector<std::uint32_t> r(a.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * m + carry;
        r[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
    }
    r[a.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

void BigInt::divmod_mag(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    if (v.empty()) throw std::domain_error("BigInt: division by zero");
    q.clear();
    r.clear();
    if (cmp_mag(u, v) < 0) {
        r = u;
        return;
    }
    if (v.size() == 1) {
        q.assign(u.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = u.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | u[i];
            q[i] = static_cast<std::uint32_t>(cur / v[0]);
            rem = cur % v[0];
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<std::uint32_t>(rem));
        return;
    }
    // Long division, quotient limb found by binary search. O(32 n) per limb,
    // fine at the magnitudes this project produces.
    q.assign(u.size(), 0);
    for (std::size_t i = u.size(); i-- > 0;) {
        r.insert(r.begin(), u[i]);
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (cmp_mag(r, v) < 0) continue;
        std::uint64_t lo = 0, hi = kBase - 1;
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (cmp_mag(mul_small(v, static_cast<std::uint32_t>(mid)), r) <= 0)
                lo = mid;
            else
                hi = mid - 1;
        }
        q[i] = static_cast<std::uint32_t>(lo);
        r = sub_mag(r, mul_small(v, static_cast<std::uint32_t>(lo)));
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = sign_;
            r.mag_ = sub_mag(mag_, o.mag_);
        } else {
            r.sign_ = o.sign_;
            r.mag_ = sub_mag(o.mag_, mag_);
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (sign_ == 0 || o.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = sign_ * o.sign_;
    r.mag_ = mul_mag(mag_, o.mag_);
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& u, const BigInt& v, BigInt& q, BigInt& r) {
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(u.mag_, v.mag_, qm, rm);
    q = BigInt();
    r = BigInt();
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : u.sign_ * v.sign_;
    r.sign_ = r.mag_.empty() ? 0 : u.sign_;
    q.trim();
    r.trim();
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

void BigInt::shr1(std::vector<std::uint32_t>& a) {
    std::uint32_t carry = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        std::uint32_t next = a[i] & 1u;
        a[i] = (a[i] >> 1) | (carry << 31);
        carry = next;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void BigInt::shl_bits(std::vector<std::uint32_t>& a, std::size_t bits) {
    if (a.empty() || bits == 0) return;
    std::size_t limbs = bits / 32, rem = bits % 32;
    if (rem) {
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint32_t next = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[i]) << rem) >> 32);
            a[i] = (a[i] << rem) | carry;
            carry = next;
        }
        if (carry) a.push_back(carry);
    }
    a.insert(a.begin(), limbs, 0u);
}

std::size_t BigInt::trailing_zero_bits(const std::vector<std::uint32_t>& a) {
    std::size_t tz = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            tz += 32;
            continue;
        }
        std::uint32_t x = a[i];
        while ((x & 1u) == 0) {
            ++tz;
            x >>= 1;
        }
        break;
    }
    return tz;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    std::vector<std::uint32_t> x = a.mag_, y = b.mag_;
    if (x.empty()) return b.abs();
    if (y.empty()) return a.abs();
    // Stein's algorithm on magnitudes.
    std::size_t tx = trailing_zero_bits(x), ty = trailing_zero_bits(y);
    std::size_t shift = std::min(tx, ty);
    for (std::size_t i = 0; i < tx; ++i) shr1(x);
    while (true) {
        std::size_t t = trailing_zero_bits(y);
        for (std::size_t i = 0; i < t; ++i) shr1(y);
        if (cmp_mag(x, y) > 0) std::swap(x, y);
        y = sub_mag(y, x);
        if (y.empty()) break;
    }
    shl_bits(x, shift);
    BigInt g;
    g.mag_ = std::move(x);
    g.sign_ = g.mag_.empty() ? 0 : 1;
    return g;
}

BigInt BigInt::pow2(unsigned k) {
    BigInt r;
    r.sign_ = 1;
    r.mag_.assign(k / 32 + 1, 0);
    r.mag_[k / 32] = 1u << (k % 32);
    return r;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    std::uint32_t top = mag_.back();
    std::size_t bits = (mag_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigInt::fits_int64() const {
    if (bit_length() < 64) return true;
    // -2^63 exactly
    return bit_length() == 64 && sign_ < 0 && mag_[0] == 0 && mag_[1] == 0x80000000u;
}

std::int64_t BigInt::to_int64() const {
    std::uint64_t m = 0;
    if (!mag_.empty()) m = mag_[0];
    if (mag_.size() > 1) m |= static_cast<std::uint64_t>(mag_[1]) << 32;
    return sign_ < 0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
}

double BigInt::to_double() const {
    double r = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -r : r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        // divide by 1e9, collecting 9 decimal digits at a time
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out.append(digits.rbegin(), digits.rend());
    return out;
}

BigInt BigInt::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '-' || s[0] == '+') {
        sign = s[0] == '-' ? -1 : 1;
        pos = 1;
    }
    if (pos == s.size()) throw std::invalid_argument("BigInt: no digits in '" + s + "'");
    BigInt r;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9')
            throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
        r.mag_ = add_mag(mul_small(r.mag_, 10u), {static_cast<std::uint32_t>(s[pos] - '0')});
    }
    r.sign_ = r.mag_.empty() ? 0 : sign;
    return r;
}

}  // namespace meandim
