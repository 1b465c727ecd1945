#include "ipalg/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "ipalg/guards.hpp"

namespace ipalg {

GuardConfig& guards() {
    static GuardConfig config;
    return config;
}

KernelStats& kernel_stats() {
    thread_local KernelStats stats;
    return stats;
}

void reset_kernel_stats() { kernel_stats() = KernelStats{}; }

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    size_t start = 0;
    if (start < text.size() && (text[start] == '+' || text[start] == '-')) ++start;
    size_t slash = text.find('/', start);
    bool ok;
    if (slash == std::string::npos) {
        ok = all_digits(text, start, text.size());
    } else {
        ok = all_digits(text, start, slash) && all_digits(text, slash + 1, text.size());
    }
    if (!ok)
        throw std::invalid_argument("exact rational required, got '" + text + "'");
    Int num(slash == std::string::npos ? text : text.substr(0, slash));
    Int den(slash == std::string::npos ? "1" : text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rat(num, den);  // the (num, den) constructor canonicalizes
}

std::string rat_to_string(const Rat& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return value.str();
}

bool is_zero_vec(const RatVec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

bool is_nonneg_nonzero(const RatVec& v) {
    bool some_positive = false;
    for (const Rat& x : v) {
        if (x < 0) return false;
        if (x > 0) some_positive = true;
    }
    return some_positive;
}

bool lex_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

}  // namespace ipalg
