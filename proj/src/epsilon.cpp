#include "lcert/epsilon.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace lc {

using boost::multiprecision::cpp_int;

Epsilon Epsilon::rational(int p, int q)
{
    if (p <= 0 || q <= 0 || p >= q)
        throw std::invalid_argument("epsilon must lie in (0,1)");
    return Epsilon{Kind::Rational, p, q};
}

Epsilon Epsilon::parse(const std::string& s)
{
    if (s == "log" || s == "quasilinear")
        return inverse_log();
    auto slash = s.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("epsilon must be p/q or 'log'");
    return rational(std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1)));
}

std::string Epsilon::str() const
{
    if (kind == Kind::InverseLog)
        return "log";
    return std::to_string(p) + "/" + std::to_string(q);
}

namespace {

cpp_int ipow(cpp_int b, long long e)
{
    cpp_int r = 1;
    while (e > 0) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// smallest t >= 1 with t^q >= target
long long ceil_root(const cpp_int& target, int q)
{
    long long lo = 1, hi = 1;
    while (ipow(hi, q) < target)
        hi *= 2;
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (ipow(mid, q) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace

LayerThresholds::LayerThresholds(const Epsilon& eps, long long n) : n_(n)
{
    if (eps.kind == Epsilon::Kind::InverseLog) {
        int N = 1;
        if (n > 2) {
            N = 0;
            while ((1LL << N) < n)
                ++N;
        }
        for (int i = 1; i <= N; ++i)
            t_.push_back(1LL << (i - 1));
        return;
    }
    int N = (eps.q + eps.p - 1) / eps.p;
    for (int i = 1; i <= N; ++i)
        t_.push_back(ceil_root(ipow(cpp_int(n < 1 ? 1 : n), static_cast<long long>(i - 1) * eps.p), eps.q));
}

int LayerThresholds::level(long long degree) const
{
    int lv = 1;
    for (int i = 2; i <= layers(); ++i)
        if (degree >= t_[i - 1])
            lv = i;
    return lv;
}

long long LayerThresholds::piece_count(int i) const
{
    long long d = t_[i - 1];
    long long cap = n_ > 1 ? n_ - 1 : 1;
    if (d > cap)
        d = cap;
    return d < 1 ? 1 : d;
}

} // namespace lc
