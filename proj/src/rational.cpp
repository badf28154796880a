#include "hopftwist/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace hopftwist {

namespace {

constexpr __int128 kMax = INT64_MAX;

unsigned __int128 uabs(__int128 x) { return x < 0 ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x); }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(__int128 x) { return x <= kMax && x >= -kMax; }

mpz_class to_mpz(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = uabs(x);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_i128(0, 1);
    __int128 n = num, d = den;
    if (d < 0) { n = -n; d = -d; }
    unsigned __int128 g = gcd_u128(uabs(n), static_cast<unsigned __int128>(d));
    if (g > 1) { n /= static_cast<__int128>(g); d /= static_cast<__int128>(g); }
    *this = from_i128(n, d);
}

Rational Rational::from_i128(__int128 n, __int128 d) {
    Rational r;
    if (fits(n) && d <= kMax) {
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
    } else {
        mpq_class q(to_mpz(n), to_mpz(d));
        r.set_big(std::move(q));
    }
    return r;
}

void Rational::assign(const mpq_class& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p() && num.get_si() != INT64_MIN) {
        n_ = num.get_si();
        d_ = den.get_si();
        big_.reset();
    } else {
        set_big(q);
    }
}

Rational Rational::parse(std::string_view s) {
    std::string t(s);
    if (t.empty()) throw std::invalid_argument("empty rational");
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational '" + t + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
    q.canonicalize();
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(d_)); }

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    if (n_ > 0) { r.n_ = d_; r.d_ = n_; }
    else { r.n_ = -d_; r.d_ = -n_; }
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    if (a.d_ == 1 && b.d_ == 1) return Rational::from_i128(static_cast<__int128>(a.n_) + b.n_, 1);
    if (a.d_ == b.d_) {
        __int128 t = static_cast<__int128>(a.n_) + b.n_;
        std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(uabs(t) % static_cast<unsigned __int128>(a.d_)), static_cast<std::uint64_t>(a.d_));
        if (g == 0) g = static_cast<std::uint64_t>(a.d_);
        return Rational::from_i128(t / static_cast<__int128>(g), static_cast<__int128>(a.d_) / g);
    }
    std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(a.d_), static_cast<std::uint64_t>(b.d_));
    __int128 bd = b.d_ / static_cast<std::int64_t>(g);
    __int128 ad = a.d_ / static_cast<std::int64_t>(g);
    __int128 t = static_cast<__int128>(a.n_) * bd + static_cast<__int128>(b.n_) * ad;
    __int128 d = static_cast<__int128>(a.d_) * bd;
    if (t == 0) return Rational();
    // gcd(t, a.d*b.d/g) == gcd(t, g)
    std::uint64_t g2 = g == 1 ? 1 : gcd_u64(static_cast<std::uint64_t>(uabs(t) % g), g);
    if (g2 == 0) g2 = g;
    if (g2 > 1) { t /= static_cast<__int128>(g2); d /= static_cast<__int128>(g2); }
    return Rational::from_i128(t, d);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    if (a.n_ == 0 || b.n_ == 0) return Rational();
    if (a.d_ == 1 && b.d_ == 1) return Rational::from_i128(static_cast<__int128>(a.n_) * b.n_, 1);
    std::uint64_t g1 = gcd_u64(static_cast<std::uint64_t>(a.n_ < 0 ? -a.n_ : a.n_), static_cast<std::uint64_t>(b.d_));
    std::uint64_t g2 = gcd_u64(static_cast<std::uint64_t>(b.n_ < 0 ? -b.n_ : b.n_), static_cast<std::uint64_t>(a.d_));
    __int128 n = static_cast<__int128>(a.n_ / static_cast<std::int64_t>(g1)) * (b.n_ / static_cast<std::int64_t>(g2));
    __int128 d = static_cast<__int128>(a.d_ / static_cast<std::int64_t>(g2)) * (b.d_ / static_cast<std::int64_t>(g1));
    return Rational::from_i128(n, d);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    // canonical forms never straddle representations
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    return a.to_mpq() < b.to_mpq();
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>()(big_->get_str());
    return std::hash<std::int64_t>()(n_) * 1000003u ^ std::hash<std::int64_t>()(d_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hopftwist
