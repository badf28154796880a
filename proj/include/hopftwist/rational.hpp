#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace hopftwist {

// Exact rational in lowest terms. Values that fit in int64 (numerator in
// (INT64_MIN, INT64_MAX], positive denominator) stay in two machine words;
// everything else falls back to an mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long long v) : n_(v), d_(1) {
        if (v == INT64_MIN) set_big(mpq_class(mpz_class(static_cast<long>(v))));
    }
    Rational(long long num, long long den);
    explicit Rational(const mpq_class& q) { assign(q); }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
            else big_.reset();
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    static Rational parse(std::string_view s);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const;
    int sign() const;
    bool is_small() const { return !big_; }
    // Only meaningful when is_small().
    std::int64_t small_num() const { return n_; }
    std::int64_t small_den() const { return d_; }

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    std::string str() const;

    Rational operator-() const;
    Rational inverse() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);

    std::size_t hash() const;

private:
    void assign(const mpq_class& q);
    void set_big(mpq_class q) { big_ = std::make_unique<mpq_class>(std::move(q)); n_ = 0; d_ = 1; }
    static Rational from_i128(__int128 n, __int128 d);  // d > 0, already reduced

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace hopftwist
