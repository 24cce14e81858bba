#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lc {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Growable bit string, bits stored LSB-first inside 64-bit words.
class BitString {
public:
    BitString() = default;

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b)
    {
        if (b)
            w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

    void push_back(bool b);
    // appends the low `len` bits of `value`, least significant first
    void append_word(std::uint64_t value, unsigned len);
    void append(const BitString& other);
    BitString slice(std::size_t pos, std::size_t len) const;
    std::uint64_t read_word(std::size_t pos, unsigned len) const;
    void truncate(std::size_t len);

    bool operator==(const BitString& o) const;
    bool operator!=(const BitString& o) const { return !(*this == o); }

    // "<bits>:<hex>" with nibbles holding bits 4j..4j+3, bit 4j in the low position
    std::string to_hex() const;
    static BitString from_hex(const std::string& text);

    std::size_t hash() const;

private:
    std::vector<std::uint64_t> w_;
    std::size_t n_ = 0;
};

class BitWriter {
public:
    void bit(bool b) { out_.push_back(b); }
    void fixed(std::uint64_t v, unsigned len) { out_.append_word(v, len); }
    // Elias gamma code of v+1, so v = 0 is allowed
    void gamma(std::uint64_t v);
    void bits(const BitString& b)
    {
        gamma(b.size());
        out_.append(b);
    }
    const BitString& result() const { return out_; }
    BitString take() { return std::move(out_); }

private:
    BitString out_;
};

class BitReader {
public:
    explicit BitReader(const BitString& in) : in_(in) {}
    bool bit();
    std::uint64_t fixed(unsigned len);
    std::uint64_t gamma();
    BitString bits();
    bool done() const { return pos_ == in_.size(); }
    std::size_t position() const { return pos_; }
    void expect_done() const
    {
        if (!done())
            throw DecodeError("trailing bits");
    }

private:
    const BitString& in_;
    std::size_t pos_ = 0;
};

unsigned gamma_length(std::uint64_t v);

} // namespace lc
