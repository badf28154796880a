#include "hopftwist/cyclo.hpp"

#include <array>
#include <atomic>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace hopftwist {

namespace {

std::vector<long long> poly_divide_exact(std::vector<long long> num, const std::vector<long long>& den) {
    // den monic
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    std::vector<long long> q(nn - dn + 1, 0);
    for (int i = nn; i >= dn; --i) {
        long long c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (int k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
    }
    for (int i = 0; i < dn; ++i)
        if (num[i] != 0) throw std::logic_error("inexact cyclotomic division");
    return q;
}

std::unique_ptr<CycloField> make_field(int n) {
    auto f = std::make_unique<CycloField>();
    f->order = n;
    f->poly = cyclotomic_poly(n);
    f->phi = static_cast<int>(f->poly.size()) - 1;
    int phi = f->phi;
    int top = std::max(2 * phi, n);
    std::vector<std::vector<long long>> red(top, std::vector<long long>(phi, 0));
    for (int e = 0; e < top; ++e) {
        if (e < phi) {
            red[e][e] = 1;
            continue;
        }
        // z^e = z * z^{e-1}, then replace z^phi by -(poly[0..phi-1])
        const auto& prev = red[e - 1];
        std::vector<long long> cur(phi, 0);
        long long carry = prev[phi - 1];
        for (int k = phi - 1; k >= 1; --k) cur[k] = prev[k - 1];
        for (int k = 0; k < phi; ++k) cur[k] -= carry * f->poly[k];
        red[e] = std::move(cur);
    }
    f->pow_red.assign(red.begin(), red.begin() + 2 * phi);
    f->root_red.assign(red.begin(), red.begin() + n);
    return f;
}

}  // namespace

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

std::vector<long long> cyclotomic_poly(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<int, std::vector<long long>> memo;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    std::vector<long long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divide_exact(p, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lk(mu);
    memo[n] = p;
    return p;
}

const CycloField* cyclo_field(int order) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    static std::array<std::atomic<const CycloField*>, 512> fast{};
    if (order < 512) {
        const CycloField* f = fast[order].load(std::memory_order_acquire);
        if (f) return f;
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloField>> fields;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = fields[order];
    if (!slot) slot = make_field(order);
    if (order < 512) fast[order].store(slot.get(), std::memory_order_release);
    return slot.get();
}

int lcm_order(int a, int b) { return std::lcm(a, b); }

namespace {
const CycloField* rationals() {
    static const CycloField* q = cyclo_field(1);
    return q;
}
}  // namespace

CycloNum::CycloNum() : f_(rationals()), c_(1) {}
CycloNum::CycloNum(long long v) : f_(rationals()), c_(1, Rational(v)) {}
CycloNum::CycloNum(Rational r) : f_(rationals()), c_(1, std::move(r)) {}
CycloNum::CycloNum(const CycloField* f, Coeffs c) : f_(f), c_(std::move(c)) {
    if (static_cast<int>(c_.size()) != f_->phi) throw std::invalid_argument("coefficient vector length differs from phi(N)");
}

CycloNum CycloNum::zero(int order) {
    const CycloField* f = cyclo_field(order);
    return CycloNum(f, Coeffs(f->phi));
}

CycloNum CycloNum::one(int order) {
    CycloNum r = zero(order);
    r.c_[0] = Rational(1);
    return r;
}

CycloNum CycloNum::root(int order, long long k) {
    const CycloField* f = cyclo_field(order);
    long long e = ((k % order) + order) % order;
    Coeffs c(f->phi);
    const auto& red = f->root_red[e];
    for (int i = 0; i < f->phi; ++i)
        if (red[i] != 0) c[i] = Rational(red[i]);
    return CycloNum(f, std::move(c));
}

bool CycloNum::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

bool CycloNum::is_one() const { return is_rational() && c_[0].is_one(); }

CycloNum CycloNum::lifted(int order) const {
    if (order == f_->order) return *this;
    if (order % f_->order != 0) throw std::invalid_argument("cannot lift Q(zeta_" + std::to_string(f_->order) + ") into Q(zeta_" + std::to_string(order) + ")");
    const CycloField* g = cyclo_field(order);
    Coeffs c(g->phi);
    int step = order / f_->order;
    for (int k = 0; k < f_->phi; ++k) {
        if (c_[k].is_zero()) continue;
        const auto& red = g->root_red[(k * step) % order];
        for (int i = 0; i < g->phi; ++i)
            if (red[i] != 0) c[i] += c_[k] * Rational(red[i]);
    }
    return CycloNum(g, std::move(c));
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& b) {
    if (f_ == b.f_) {
        for (int i = 0; i < f_->phi; ++i)
            if (!b.c_[i].is_zero()) c_[i] += b.c_[i];
        return *this;
    }
    if (b.f_->order == 1) {
        c_[0] += b.c_[0];
        return *this;
    }
    if (f_->order == 1) {
        Rational r = c_[0];
        *this = b;
        c_[0] += r;
        return *this;
    }
    int n = lcm_order(f_->order, b.f_->order);
    *this = lifted(n);
    return *this += b.lifted(n);
}

CycloNum& CycloNum::operator-=(const CycloNum& b) { return *this += -b; }

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    CycloNum r = a;
    r += b;
    return r;
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) {
    CycloNum r = a;
    r -= b;
    return r;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    if (b.f_->order == 1) {
        CycloNum r = a;
        const Rational& s = b.c_[0];
        if (s.is_one()) return r;
        for (auto& x : r.c_)
            if (!x.is_zero()) x *= s;
        return r;
    }
    if (a.f_->order == 1) return b * a;
    if (a.f_ != b.f_) {
        int n = lcm_order(a.f_->order, b.f_->order);
        return a.lifted(n) * b.lifted(n);
    }
    const CycloField* f = a.f_;
    int phi = f->phi;
    boost::container::small_vector<Rational, 8> prod(2 * phi - 1);
    for (int i = 0; i < phi; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j < phi; ++j) {
            if (b.c_[j].is_zero()) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
        }
    }
    CycloNum::Coeffs c(phi);
    for (int e = 0; e < 2 * phi - 1; ++e) {
        if (prod[e].is_zero()) continue;
        if (e < phi) {
            c[e] += prod[e];
            continue;
        }
        const auto& red = f->pow_red[e];
        for (int i = 0; i < phi; ++i)
            if (red[i] != 0) c[i] += prod[e] * Rational(red[i]);
    }
    return CycloNum(f, std::move(c));
}

void CycloNum::add_mul(const CycloNum& a, const CycloNum& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (b.f_->order == 1 && a.f_ == f_) {
        const Rational& s = b.c_[0];
        for (int i = 0; i < f_->phi; ++i)
            if (!a.c_[i].is_zero()) c_[i] += a.c_[i] * s;
        return;
    }
    if (a.f_->order == 1 && b.f_ == f_) {
        const Rational& s = a.c_[0];
        for (int i = 0; i < f_->phi; ++i)
            if (!b.c_[i].is_zero()) c_[i] += b.c_[i] * s;
        return;
    }
    *this += a * b;
}

CycloNum CycloNum::galois(long long j) const {
    int n = f_->order;
    long long jj = ((j % n) + n) % n;
    if (std::gcd(jj, static_cast<long long>(n)) != 1) throw std::invalid_argument("galois exponent " + std::to_string(j) + " is not coprime to " + std::to_string(n));
    if (n == 1 || jj == 1) return *this;
    Coeffs c(f_->phi);
    for (int k = 0; k < f_->phi; ++k) {
        if (c_[k].is_zero()) continue;
        const auto& red = f_->root_red[(k * jj) % n];
        for (int i = 0; i < f_->phi; ++i)
            if (red[i] != 0) c[i] += c_[k] * Rational(red[i]);
    }
    return CycloNum(f_, std::move(c));
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) {
        CycloNum r = *this;
        r.c_[0] = c_[0].inverse();
        return r;
    }
    // a^{-1} = (product of the other conjugates) / norm
    int n = f_->order;
    CycloNum others = one(n);
    for (int j = 2; j < n; ++j)
        if (std::gcd(j, n) == 1) others *= galois(j);
    CycloNum norm = *this * others;
    if (!norm.is_rational()) throw std::logic_error("norm is not rational");
    return others * CycloNum(norm.c_[0].inverse());
}

CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.f_ == b.f_) {
        for (int i = 0; i < a.f_->phi; ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    if (a.f_->order == 1) return b.is_rational() && b.c_[0] == a.c_[0];
    if (b.f_->order == 1) return a.is_rational() && a.c_[0] == b.c_[0];
    int n = lcm_order(a.f_->order, b.f_->order);
    return a.lifted(n) == b.lifted(n);
}

std::string CycloNum::str(int order) const {
    CycloNum v = lifted(order);
    std::string out;
    for (int k = v.f_->phi - 1; k >= 0; --k) {
        const Rational& c = v.c_[k];
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Rational a = neg ? -c : c;
        if (out.empty()) out = neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        if (mono.empty()) out += a.str();
        else if (a.is_one()) out += mono;
        else out += a.str() + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

namespace {

class ScalarParser {
public:
    ScalarParser(std::string_view s, int order) : s_(s), order_(order) {}

    CycloNum run() {
        CycloNum v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("bad scalar '" + std::string(s_) + "': " + why + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    CycloNum expr() {
        CycloNum acc = CycloNum::zero(order_);
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek('+')) { ++pos_; }
            else if (peek('-')) { ++pos_; sign = -1; }
            else if (!first) break;
            CycloNum t = term();
            acc += sign > 0 ? t : -t;
            first = false;
        }
        return acc;
    }
    CycloNum term() {
        CycloNum v = factor();
        while (true) {
            skip();
            if (peek('*')) {
                ++pos_;
                v = v * factor();
            } else if (peek('z') || peek('(')) {
                v = v * factor();
            } else if (peek('/')) {
                ++pos_;
                v = v / factor();
            } else {
                break;
            }
        }
        return v;
    }
    long long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::stoll(std::string(s_.substr(start, pos_ - start)));
    }
    CycloNum factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            CycloNum v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == 'z') {
            ++pos_;
            long long e = 1;
            if (peek('^')) {
                ++pos_;
                skip();
                bool neg = false;
                if (peek('-')) { ++pos_; neg = true; }
                e = integer();
                if (neg) e = -e;
            }
            return CycloNum::root(order_, e);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return CycloNum(Rational::parse(s_.substr(start, pos_ - start)));
        }
        fail("unexpected character");
    }

    std::string_view s_;
    int order_;
    std::size_t pos_ = 0;
};

}  // namespace

CycloNum CycloNum::parse(std::string_view text, int order) {
    CycloNum v = ScalarParser(text, order).run();
    return v.lifted(order);
}

CycloNum cyclo_arith(const CycloNum& a, const CycloNum& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw std::invalid_argument("unknown arithmetic op");
}

CycloNum galois_apply(const CycloNum& a, long long j) { return a.galois(j); }

std::ostream& operator<<(std::ostream& os, const CycloNum& c) { return os << c.str(); }

}  // namespace hopftwist
