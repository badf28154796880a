#pragma once

#include "hopftwist/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace hopftwist {

// Q(zeta_N) in the power basis 1, z, ..., z^{phi-1} modulo Phi_N.
struct CycloField {
    int order = 1;
    int phi = 1;
    std::vector<long long> poly;                   // Phi_N, low degree first, monic
    std::vector<std::vector<long long>> pow_red;   // z^e for e in [0, 2*phi) reduced
    std::vector<std::vector<long long>> root_red;  // z^e for e in [0, order) reduced
};

// Fields are created once and never freed; the pointer is stable.
const CycloField* cyclo_field(int order);

std::vector<long long> cyclotomic_poly(int n);
int euler_phi(int n);

class CycloNum {
public:
    using Coeffs = boost::container::small_vector<Rational, 2>;

    CycloNum();
    CycloNum(long long v);
    CycloNum(Rational r);
    CycloNum(const CycloField* f, Coeffs c);

    static CycloNum zero(int order = 1);
    static CycloNum one(int order = 1);
    // zeta_order^k
    static CycloNum root(int order, long long k);
    // Parse "3/2*z^2 - 1" with z = zeta_order.
    static CycloNum parse(std::string_view text, int order);

    int order() const { return f_->order; }
    const CycloField* field() const { return f_; }
    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Requires is_rational().
    Rational rational_part() const { return c_[0]; }

    // Same value viewed in Q(zeta_order); order must be a multiple of order().
    CycloNum lifted(int order) const;
    // Text in the scalar syntax with z = zeta_order; order must be a multiple of order().
    std::string str(int order) const;
    std::string str() const { return str(order()); }

    CycloNum operator-() const;
    CycloNum inverse() const;
    CycloNum galois(long long j) const;

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b);
    CycloNum& operator+=(const CycloNum& b);
    CycloNum& operator-=(const CycloNum& b);
    CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }
    CycloNum& operator/=(const CycloNum& b) { return *this = *this / b; }
    // this += a * b
    void add_mul(const CycloNum& a, const CycloNum& b);

    friend bool operator==(const CycloNum& a, const CycloNum& b);
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

private:
    const CycloField* f_;
    Coeffs c_;
};

enum class ArithOp { add, sub, mul, div };
CycloNum cyclo_arith(const CycloNum& a, const CycloNum& b, ArithOp op);
CycloNum galois_apply(const CycloNum& a, long long j);

int lcm_order(int a, int b);

std::ostream& operator<<(std::ostream& os, const CycloNum& c);

}  // namespace hopftwist
