#pragma once

#include <string>
#include <vector>

namespace lc {

// Either a rational p/q in (0,1) or the quasilinear choice 1/log2(n).
struct Epsilon {
    enum class Kind { Rational, InverseLog };
    Kind kind = Kind::Rational;
    int p = 1;
    int q = 2;

    static Epsilon rational(int p, int q);
    static Epsilon inverse_log() { return Epsilon{Kind::InverseLog, 0, 0}; }
    static Epsilon half() { return rational(1, 2); }
    // "1/2", "1/3", "log"
    static Epsilon parse(const std::string& s);
    std::string str() const;
    bool operator==(const Epsilon&) const = default;
};

// Degree thresholds of the layers for a fixed n: V_i = {t_i <= deg < t_{i+1}},
// with t_i = ceil(n^{(i-1) eps}) evaluated exactly. Isolated vertices go to V_1.
class LayerThresholds {
public:
    LayerThresholds(const Epsilon& eps, long long n);

    int layers() const { return static_cast<int>(t_.size()); }
    long long n() const { return n_; }
    // 1-based layer index of a vertex of the given degree
    int level(long long degree) const;
    // smallest degree in V_i (i is 1-based)
    long long threshold(int i) const { return t_[i - 1]; }
    // number of pieces G_i is cut into: ceil(n^{(i-1) eps}) clamped to [1, n-1]
    long long piece_count(int i) const;

private:
    long long n_;
    std::vector<long long> t_;
};

} // namespace lc
