#include "lcert/bits.hpp"

#include <bit>
#include <functional>

namespace lc {

void BitString::push_back(bool b)
{
    if ((n_ & 63) == 0)
        w_.push_back(0);
    if (b)
        w_.back() |= (std::uint64_t{1} << (n_ & 63));
    ++n_;
}

void BitString::append_word(std::uint64_t value, unsigned len)
{
    if (len == 0)
        return;
    if (len < 64)
        value &= (std::uint64_t{1} << len) - 1;
    unsigned off = n_ & 63;
    if (off == 0) {
        w_.push_back(value);
    }
    else {
        w_.back() |= value << off;
        if (off + len > 64)
            w_.push_back(value >> (64 - off));
    }
    n_ += len;
}

void BitString::append(const BitString& other)
{
    std::size_t full = other.n_ / 64;
    for (std::size_t i = 0; i < full; ++i)
        append_word(other.w_[i], 64);
    unsigned rest = other.n_ & 63;
    if (rest)
        append_word(other.w_[full], rest);
}

std::uint64_t BitString::read_word(std::size_t pos, unsigned len) const
{
    if (len == 0)
        return 0;
    std::size_t wi = pos >> 6;
    unsigned off = pos & 63;
    std::uint64_t v = w_[wi] >> off;
    if (off + len > 64)
        v |= w_[wi + 1] << (64 - off);
    if (len < 64)
        v &= (std::uint64_t{1} << len) - 1;
    return v;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const
{
    BitString r;
    r.w_.reserve((len + 63) / 64);
    while (len > 0) {
        unsigned take = len >= 64 ? 64 : static_cast<unsigned>(len);
        r.append_word(read_word(pos, take), take);
        pos += take;
        len -= take;
    }
    return r;
}

void BitString::truncate(std::size_t len)
{
    if (len >= n_)
        return;
    n_ = len;
    w_.resize((len + 63) / 64);
    if (len & 63)
        w_.back() &= (std::uint64_t{1} << (len & 63)) - 1;
}

bool BitString::operator==(const BitString& o) const
{
    return n_ == o.n_ && w_ == o.w_;
}

std::string BitString::to_hex() const
{
    static const char digits[] = "0123456789abcdef";
    std::string s = std::to_string(n_) + ":";
    for (std::size_t i = 0; i < n_; i += 4) {
        unsigned take = n_ - i >= 4 ? 4 : static_cast<unsigned>(n_ - i);
        s.push_back(digits[read_word(i, take)]);
    }
    return s;
}

BitString BitString::from_hex(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw DecodeError("bitstring without length prefix");
    std::size_t n = 0;
    try {
        n = std::stoull(text.substr(0, colon));
    }
    catch (const std::exception&) {
        throw DecodeError("bad bitstring length");
    }
    std::string hex = text.substr(colon + 1);
    if (hex.size() != (n + 3) / 4)
        throw DecodeError("bitstring length mismatch");
    BitString r;
    for (std::size_t i = 0; i < hex.size(); ++i) {
        char c = hex[i];
        unsigned v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw DecodeError("bad hex digit");
        unsigned take = n - 4 * i >= 4 ? 4 : static_cast<unsigned>(n - 4 * i);
        if (take < 4 && (v >> take))
            throw DecodeError("nonzero padding");
        r.append_word(v, take);
    }
    return r;
}

std::size_t BitString::hash() const
{
    std::size_t h = std::hash<std::size_t>{}(n_);
    for (auto w : w_)
        h = h * 1099511628211ull ^ std::hash<std::uint64_t>{}(w);
    return h;
}

unsigned gamma_length(std::uint64_t v)
{
    std::uint64_t x = v + 1;
    unsigned L = 63 - std::countl_zero(x);
    return 2 * L + 1;
}

void BitWriter::gamma(std::uint64_t v)
{
    std::uint64_t x = v + 1;
    unsigned L = 63 - std::countl_zero(x);
    out_.append_word(0, L);
    // x has L+1 significant bits, written most significant first
    for (int b = static_cast<int>(L); b >= 0; --b)
        out_.push_back((x >> b) & 1u);
}

bool BitReader::bit()
{
    if (pos_ >= in_.size())
        throw DecodeError("read past end");
    return in_.get(pos_++);
}

std::uint64_t BitReader::fixed(unsigned len)
{
    if (pos_ + len > in_.size())
        throw DecodeError("read past end");
    auto v = in_.read_word(pos_, len);
    pos_ += len;
    return v;
}

std::uint64_t BitReader::gamma()
{
    unsigned L = 0;
    while (!bit()) {
        if (++L > 62)
            throw DecodeError("gamma code too long");
    }
    std::uint64_t x = 1;
    for (unsigned i = 0; i < L; ++i)
        x = (x << 1) | (bit() ? 1u : 0u);
    return x - 1;
}

BitString BitReader::bits()
{
    auto len = gamma();
    if (len > in_.size() - pos_)
        throw DecodeError("read past end");
    auto r = in_.slice(pos_, len);
    pos_ += len;
    return r;
}

} // namespace lc
