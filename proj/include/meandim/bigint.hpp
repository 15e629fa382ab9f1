#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace meandim {

/// Arbitrary-precision signed integer (sign + base-2^32 magnitude).
///
/// Big enough for exact simplex pivoting and for the 2^|F_j| growth in the
/// dimension-bound formulas, small enough to carry no external dependency.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);  // NOLINT: implicit like an int literal

    static BigInt from_string(const std::string& s);
    /// 2^k for k >= 0.
    static BigInt pow2(unsigned k);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_odd() const { return sign_ != 0 && (mag_[0] & 1u); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    /// Truncated division (C semantics: quotient rounds toward zero).
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;
    static void divmod(const BigInt& u, const BigInt& v, BigInt& q, BigInt& r);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    bool operator==(const BigInt& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const BigInt& o) const { return cmp(*this, o) != 0; }
    bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const BigInt& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const BigInt& o) const { return cmp(*this, o) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b);
    static BigInt gcd(const BigInt& a, const BigInt& b);

    /// Number of bits in |x|; 0 for x = 0.
    std::size_t bit_length() const;
    bool fits_int64() const;
    std::int64_t to_int64() const;  // requires fits_int64()
    double to_double() const;
    std::string to_string() const;

private:
    int sign_ = 0;                   // -1, 0, +1
    std::vector<std::uint32_t> mag_; // little-endian limbs, no trailing zeros

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_small(const std::vector<std::uint32_t>& a, std::uint32_t m);
    static void divmod_mag(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
    static void shr1(std::vector<std::uint32_t>& a);
    static void shl_bits(std::vector<std::uint32_t>& a, std::size_t bits);
    static std::size_t trailing_zero_bits(const std::vector<std::uint32_t>& a);
};

}  // namespace meandim
