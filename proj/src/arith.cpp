#include "descent/arith.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace descent {

namespace {

constexpr unsigned long kTrialLimit = 1000000;
constexpr unsigned long kRhoBudget = 40000000; // total iterations per factorize() call

std::vector<unsigned long>& small_primes() {
    static std::vector<unsigned long> primes = [] {
        std::vector<bool> sieve(kTrialLimit + 1, true);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= kTrialLimit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= kTrialLimit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

Int rho_brent(const Int& n, unsigned long c, unsigned long budget, unsigned long& used) {
    // Brent's cycle variant of Pollard's rho; returns a nontrivial factor or 0.
    Int y = 2, g = 1, q = 1, x, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
            k += lim;
            used += lim;
            if (used > budget) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack
        do {
            ys = (ys * ys + c) % n;
            g = gcd(abs(x - ys), n);
            if (++used > budget) return 0;
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

void factor_into(const Int& n, std::map<Int, unsigned>& out, unsigned long budget,
                 unsigned long& used) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    // perfect power shortcut
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            Int r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
                std::map<Int, unsigned> sub;
                factor_into(r, sub, budget, used);
                for (auto& [p, e] : sub) out[p] += e * k;
                return;
            }
        }
    }
    Int d = 0;
    for (unsigned long c = 1; c < 64 && d == 0; ++c) {
        d = rho_brent(n, c, budget, used);
        if (used > budget) throw FactorizationIncomplete(n);
    }
    if (d == 0) throw FactorizationIncomplete(n);
    factor_into(d, out, budget, used);
    factor_into(n / d, out, budget, used);
}

} // namespace

Int Factorization::value() const {
    Int v = sign;
    for (auto& [p, e] : primes) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

static FactorCache* g_cache = nullptr;
void set_factor_cache(FactorCache* cache) { g_cache = cache; }
FactorCache* factor_cache() { return g_cache; }

Factorization factorize(const Int& n) {
    if (n == 0) throw std::domain_error("factorize(0)");
    Factorization f;
    f.sign = sgn(n);
    Int m = abs(n);
    if (m == 1) return f;
    if (g_cache) {
        if (auto hit = g_cache->lookup(m)) {
            f.primes = hit->primes;
            return f;
        }
    }
    Int orig = m;
    std::map<Int, unsigned> acc;
    for (unsigned long p : small_primes()) {
        if (Int(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++acc[Int(p)];
        }
        if (m == 1) break;
    }
    if (m > 1) {
        unsigned long used = 0;
        factor_into(m, acc, kRhoBudget, used);
    }
    f.primes.assign(acc.begin(), acc.end());
    if (g_cache) {
        Factorization pos = f;
        pos.sign = 1;
        g_cache->store(orig, pos);
    }
    return f;
}

std::pair<Int, Int> squarefree_part(const Int& n) {
    if (n == 0) throw std::domain_error("squarefree_part(0)");
    Factorization f = factorize(n);
    Int s = f.sign, t = 1;
    for (auto& [p, e] : f.primes) {
        Int ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 2);
        t *= ph;
        if (e % 2) s *= p;
    }
    return {s, t};
}

Int squarefree_kernel(const Int& n) { return squarefree_part(n).first; }

CubeFreeParts cubefree_decompose(const Int& n) {
    if (n <= 0) throw std::domain_error("cubefree_decompose requires n > 0");
    Factorization f = factorize(n);
    CubeFreeParts parts{1, 1, 1};
    for (auto& [p, e] : f.primes) {
        Int ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 3);
        parts.C *= ph;
        if (e % 3 == 1) parts.A *= p;
        if (e % 3 == 2) parts.B *= p;
    }
    return parts;
}

std::optional<Int> perfect_root(const Int& n, unsigned k) {
    if (k == 0) throw std::domain_error("perfect_root k=0");
    if (n < 0 && k % 2 == 0) return std::nullopt;
    Int r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) return r;
    return std::nullopt;
}

std::pair<Int, Int> sixth_power_free_reduce(const Int& b) {
    if (b == 0) throw std::domain_error("sixth_power_free_reduce(0)");
    Factorization f = factorize(b);
    Int bp = f.sign, u = 1;
    for (auto& [p, e] : f.primes) {
        Int ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 6);
        u *= ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e % 6);
        bp *= ph;
    }
    return {bp, u};
}

Rat parse_rational(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

struct FactorCache::Impl {
    std::mutex mu;
    std::string path;
    std::map<Int, std::vector<std::pair<Int, unsigned>>> table;
    std::ofstream append;
};

FactorCache::FactorCache(const std::string& path) : impl_(new Impl) {
    impl_->path = path;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string nstr, sstr, fstr;
        if (!std::getline(ss, nstr, '\t') || !std::getline(ss, sstr, '\t')) continue;
        std::getline(ss, fstr, '\t');
        Int n(nstr);
        std::vector<std::pair<Int, unsigned>> primes;
        std::istringstream fs(fstr);
        std::string item;
        while (std::getline(fs, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) continue;
            primes.emplace_back(Int(item.substr(0, colon)),
                                (unsigned)std::stoul(item.substr(colon + 1)));
        }
        impl_->table[n] = std::move(primes);
    }
    impl_->append.open(path, std::ios::app);
}

FactorCache::~FactorCache() { delete impl_; }

std::optional<Factorization> FactorCache::lookup(const Int& n) {
    std::lock_guard<std::mutex> lk(impl_->mu);
    auto it = impl_->table.find(n);
    if (it == impl_->table.end()) return std::nullopt;
    Factorization f;
    f.sign = 1;
    f.primes = it->second;
    return f;
}

void FactorCache::store(const Int& n, const Factorization& f) {
    std::lock_guard<std::mutex> lk(impl_->mu);
    if (impl_->table.count(n)) return;
    impl_->table[n] = f.primes;
    impl_->append << n.get_str() << '\t' << f.sign << '\t';
    for (size_t i = 0; i < f.primes.size(); ++i) {
        if (i) impl_->append << ',';
        impl_->append << f.primes[i].first.get_str() << ':' << f.primes[i].second;
    }
    impl_->append << '\n';
    impl_->append.flush();
}

} // namespace descent
