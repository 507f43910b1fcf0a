#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hidsym::sym {

// Small exact rational used for exponents. Exponents that appear in practice
// have tiny numerators and denominators, so machine integers suffice; overflow
// is reported instead of silently wrapping.
class Frac {
public:
    constexpr Frac() = default;
    Frac(std::int64_t n) : num_(n), den_(1) {}
    Frac(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool positive() const { return num_ > 0; }
    bool negative() const { return num_ < 0; }

    // Largest integer not exceeding the value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const { return -Frac(-num_, den_).floor(); }

    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Frac operator+(Frac a, Frac b) {
        return Frac(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
    }
    friend Frac operator-(Frac a, Frac b) { return a + (-b); }
    friend Frac operator*(Frac a, Frac b) {
        return Frac(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
    }
    friend Frac operator/(Frac a, Frac b) {
        if (b.num_ == 0) throw std::domain_error("exponent division by zero");
        return Frac(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
    }
    Frac operator-() const {
        Frac r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Frac& operator+=(Frac o) { return *this = *this + o; }
    Frac& operator-=(Frac o) { return *this = *this - o; }

    friend bool operator==(Frac a, Frac b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(Frac a, Frac b) { return !(a == b); }
    friend bool operator<(Frac a, Frac b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(Frac a, Frac b) { return b < a; }
    friend bool operator<=(Frac a, Frac b) { return !(b < a); }
    friend bool operator>=(Frac a, Frac b) { return !(a < b); }

private:
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
        return r;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
        return r;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator in exponent");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace hidsym::sym
