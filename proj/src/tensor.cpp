#include "hopftwist/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hopftwist {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size() + 1, 0);
    for (int x : img_) {
        if (x < 1 || x > size() || seen[x]) throw std::invalid_argument("images do not form a permutation");
        seen[x] = 1;
    }
}

Permutation Permutation::identity(int p) {
    std::vector<int> v(p);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

std::vector<Permutation> Permutation::all(int p) {
    std::vector<int> v(p);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < size(); ++i) inv[img_[i] - 1] = i + 1;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (img_[i] != i + 1) return false;
    return true;
}

std::string Permutation::str() const {
    std::string s = "[";
    for (int i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(img_[i]);
    return s + "]";
}

Permutation operator*(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw std::invalid_argument("permutation sizes differ");
    std::vector<int> v(s.size());
    for (int i = 1; i <= s.size(); ++i) v[i - 1] = s(t(i));
    return Permutation(std::move(v));
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

SparseTensor::SparseTensor(std::vector<int> out_shape, std::vector<int> in_shape) : out_(std::move(out_shape)), in_(std::move(in_shape)) {
    for (int d : out_) {
        if (d < 1) throw std::invalid_argument("tensor leg dimension must be positive");
        rows_ *= static_cast<std::uint64_t>(d);
    }
    for (int d : in_) {
        if (d < 1) throw std::invalid_argument("tensor leg dimension must be positive");
        cols_ *= static_cast<std::uint64_t>(d);
    }
}

SparseTensor SparseTensor::identity(const std::vector<int>& shape) {
    SparseTensor t(shape, shape);
    for (std::uint64_t i = 0; i < t.rows_; ++i) t.e_.emplace(t.key_rc(i, i), CycloNum(1));
    return t;
}

std::vector<int> SparseTensor::shape() const {
    std::vector<int> s = out_;
    s.insert(s.end(), in_.begin(), in_.end());
    return s;
}

SparseTensor::Key SparseTensor::encode(std::span<const int> idx) const {
    if (idx.size() != out_.size() + in_.size()) throw std::invalid_argument("index rank differs from tensor rank");
    Key k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        int d = i < out_.size() ? out_[i] : in_[i - out_.size()];
        if (idx[i] < 0 || idx[i] >= d) throw std::out_of_range("tensor index out of shape");
        k = k * static_cast<Key>(d) + static_cast<Key>(idx[i]);
    }
    return k;
}

std::vector<int> SparseTensor::decode(Key k) const {
    std::vector<int> s = shape();
    std::vector<int> idx(s.size());
    for (std::size_t i = s.size(); i-- > 0;) {
        idx[i] = static_cast<int>(k % static_cast<Key>(s[i]));
        k /= static_cast<Key>(s[i]);
    }
    return idx;
}

CycloNum SparseTensor::get(std::span<const int> idx) const {
    auto it = e_.find(encode(idx));
    return it == e_.end() ? CycloNum() : it->second;
}

CycloNum SparseTensor::get_rc(std::uint64_t row, std::uint64_t col) const {
    auto it = e_.find(key_rc(row, col));
    return it == e_.end() ? CycloNum() : it->second;
}

void SparseTensor::set(std::span<const int> idx, const CycloNum& v) {
    Key k = encode(idx);
    if (v.is_zero()) e_.erase(k);
    else e_[k] = v;
}

void SparseTensor::set_rc(std::uint64_t row, std::uint64_t col, const CycloNum& v) {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("tensor index out of shape");
    Key k = key_rc(row, col);
    if (v.is_zero()) e_.erase(k);
    else e_[k] = v;
}

void SparseTensor::add_rc(std::uint64_t row, std::uint64_t col, const CycloNum& v) {
    if (v.is_zero()) return;
    if (row >= rows_ || col >= cols_) throw std::out_of_range("tensor index out of shape");
    Key k = key_rc(row, col);
    auto it = e_.find(k);
    if (it == e_.end()) {
        e_.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) e_.erase(it);
}

SparseTensor SparseTensor::galois(long long j) const {
    SparseTensor t(out_, in_);
    for (const auto& [k, v] : e_) t.e_.emplace(k, v.galois(j));
    return t;
}

int SparseTensor::order() const {
    int n = 1;
    for (const auto& kv : e_) n = std::lcm(n, kv.second.order());
    return n;
}

bool operator==(const SparseTensor& a, const SparseTensor& b) {
    if (a.out_ != b.out_ || a.in_ != b.in_ || a.e_.size() != b.e_.size()) return false;
    auto ia = a.e_.begin();
    auto ib = b.e_.begin();
    for (; ia != a.e_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

SparseTensor leg_permute(const SparseTensor& t, const Permutation& sigma) {
    const auto& out = t.out_shape();
    int p = static_cast<int>(out.size());
    if (sigma.size() != p) throw std::invalid_argument("permutation size differs from number of output legs");
    std::vector<int> new_out(p);
    for (int j = 1; j <= p; ++j) new_out[sigma(j) - 1] = out[j - 1];
    SparseTensor r(new_out, t.in_shape());
    std::vector<int> nidx(p + t.in_shape().size());
    for (const auto& [k, v] : t.entries()) {
        std::vector<int> idx = t.decode(k);
        for (int j = 1; j <= p; ++j) nidx[sigma(j) - 1] = idx[j - 1];
        for (std::size_t i = p; i < idx.size(); ++i) nidx[i] = idx[i];
        r.set(nidx, v);
    }
    return r;
}

SparseTensor permutation_operator(const Permutation& sigma, int d) {
    std::vector<int> shape(sigma.size(), d);
    return leg_permute(SparseTensor::identity(shape), sigma);
}

SparseTensor compose(const std::vector<SparseTensor>& maps) {
    if (maps.empty()) throw std::invalid_argument("compose needs at least one map");
    SparseTensor acc = maps.back();
    for (std::size_t i = maps.size() - 1; i-- > 0;) {
        const SparseTensor& a = maps[i];
        if (a.in_shape() != acc.out_shape()) throw std::invalid_argument("incompatible shapes in compose");
        LinMap la = LinMap::from_tensor(a);
        SparseTensor r(a.out_shape(), acc.in_shape());
        // group acc entries by column
        std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, const CycloNum*>>> bycol;
        for (const auto& [k, v] : acc.entries()) bycol[k % acc.cols()].emplace_back(k / acc.cols(), &v);
        Accum col_acc(a.rows());
        for (const auto& [c, ents] : bycol) {
            for (const auto& [mid, v] : ents)
                for (std::size_t e = la.col_begin(mid); e < la.col_end(mid); ++e) col_acc.add_mul(la.row[e], la.val[e], *v);
            for (auto& [row, val] : col_acc.take()) r.set_rc(row, c, val);
        }
        acc = std::move(r);
    }
    return acc;
}

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
    std::vector<int> out = a.out_shape(), in = a.in_shape();
    out.insert(out.end(), b.out_shape().begin(), b.out_shape().end());
    in.insert(in.end(), b.in_shape().begin(), b.in_shape().end());
    SparseTensor r(out, in);
    for (const auto& [ka, va] : a.entries()) {
        std::uint64_t ra = ka / a.cols(), ca = ka % a.cols();
        for (const auto& [kb, vb] : b.entries()) {
            std::uint64_t rb = kb / b.cols(), cb = kb % b.cols();
            r.set_rc(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
        }
    }
    return r;
}

CycloNum trace(const SparseTensor& m) {
    if (!m.is_square()) throw std::invalid_argument("trace of a non-square map");
    CycloNum s;
    for (const auto& [k, v] : m.entries())
        if (k / m.cols() == k % m.cols()) s += v;
    return s;
}

LinMap LinMap::from_tensor(const SparseTensor& t) {
    LinMap m;
    m.rows = t.rows();
    m.cols = t.cols();
    m.start.assign(m.cols + 1, 0);
    for (const auto& kv : t.entries()) ++m.start[kv.first % m.cols + 1];
    for (std::uint64_t c = 0; c < m.cols; ++c) m.start[c + 1] += m.start[c];
    m.row.resize(t.nnz());
    m.val.resize(t.nnz());
    std::vector<std::uint64_t> fill(m.start.begin(), m.start.end() - 1);
    for (const auto& [k, v] : t.entries()) {
        std::uint64_t c = k % m.cols;
        std::size_t pos = fill[c]++;
        m.row[pos] = k / m.cols;
        m.val[pos] = v;
    }
    return m;
}

SparseTensor LinMap::to_tensor(std::vector<int> out_shape, std::vector<int> in_shape) const {
    SparseTensor t(std::move(out_shape), std::move(in_shape));
    if (t.rows() != rows || t.cols() != cols) throw std::invalid_argument("shape does not match linear map");
    for (std::uint64_t c = 0; c < cols; ++c)
        for (std::size_t e = start[c]; e < start[c + 1]; ++e) t.add_rc(row[e], c, val[e]);
    return t;
}

namespace {
constexpr std::uint64_t kDenseLimit = 1u << 19;
}

Accum::Accum(std::uint64_t dim) : dim_(dim), dense_(dim <= kDenseLimit) {
    if (dense_) {
        vals_.resize(dim);
        mark_.assign(dim, 0);
    }
}

void Accum::add(std::uint64_t k, const CycloNum& v) {
    if (dense_) {
        if (!mark_[k]) {
            mark_[k] = 1;
            touched_.push_back(k);
            vals_[k] = v;
        } else {
            vals_[k] += v;
        }
        return;
    }
    auto [it, fresh] = map_.try_emplace(k, v);
    if (!fresh) it->second += v;
}

void Accum::add_mul(std::uint64_t k, const CycloNum& a, const CycloNum& b) {
    if (dense_) {
        if (!mark_[k]) {
            mark_[k] = 1;
            touched_.push_back(k);
            vals_[k] = a * b;
        } else {
            vals_[k].add_mul(a, b);
        }
        return;
    }
    auto it = map_.find(k);
    if (it == map_.end()) map_.emplace(k, a * b);
    else it->second.add_mul(a, b);
}

SVec Accum::take() {
    SVec out;
    if (dense_) {
        std::sort(touched_.begin(), touched_.end());
        out.reserve(touched_.size());
        for (std::uint64_t k : touched_) {
            mark_[k] = 0;
            if (!vals_[k].is_zero()) out.emplace_back(k, std::move(vals_[k]));
        }
        touched_.clear();
        return out;
    }
    out.reserve(map_.size());
    for (auto& [k, v] : map_)
        if (!v.is_zero()) out.emplace_back(k, std::move(v));
    map_.clear();
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

SVec apply_legs(const SVec& v, int n, int p, const LinMap& f, int first, int kin, int kout) {
    if (first < 0 || first + kin > p) throw std::invalid_argument("leg range out of bounds");
    std::uint64_t nn = static_cast<std::uint64_t>(n);
    std::uint64_t suf = ipow(nn, p - first - kin);
    std::uint64_t blk_in = ipow(nn, kin);
    std::uint64_t blk_out = ipow(nn, kout);
    if (f.cols != blk_in || f.rows != blk_out) throw std::invalid_argument("map shape does not match legs");
    Accum acc(ipow(nn, p - kin + kout));
    for (const auto& [k, c] : v) {
        std::uint64_t s = k % suf;
        std::uint64_t b = (k / suf) % blk_in;
        std::uint64_t pre = k / (suf * blk_in);
        for (std::size_t e = f.col_begin(b); e < f.col_end(b); ++e) acc.add_mul((pre * blk_out + f.row[e]) * suf + s, f.val[e], c);
    }
    return acc.take();
}

SVec permute_legs(const SVec& v, int n, const Permutation& sigma) {
    int p = sigma.size();
    std::uint64_t nn = static_cast<std::uint64_t>(n);
    std::vector<std::uint64_t> place(p);  // weight of target position for input leg j
    for (int j = 1; j <= p; ++j) place[j - 1] = ipow(nn, p - sigma(j));
    SVec out;
    out.reserve(v.size());
    for (const auto& [k, c] : v) {
        std::uint64_t rest = k, nk = 0;
        for (int j = p; j >= 1; --j) {
            nk += (rest % nn) * place[j - 1];
            rest /= nn;
        }
        out.emplace_back(nk, c);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

SVec svec_scale(const SVec& v, const CycloNum& s) {
    SVec out;
    if (s.is_zero()) return out;
    out.reserve(v.size());
    for (const auto& [k, c] : v) out.emplace_back(k, c * s);
    return out;
}

SVec svec_add(const SVec& a, const SVec& b) {
    SVec out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            CycloNum s = a[i].second + b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SVec svec_from_dense(const std::vector<CycloNum>& d) {
    SVec out;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) out.emplace_back(i, d[i]);
    return out;
}

}  // namespace hopftwist
