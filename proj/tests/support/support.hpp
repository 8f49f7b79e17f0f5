#ifndef ENDPOINT_LAB_TEST_SUPPORT_HPP
#define ENDPOINT_LAB_TEST_SUPPORT_HPP

#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <endpoint_lab/function_dsl.hpp>
#include <endpoint_lab/function_model.hpp>
#include <endpoint_lab/rational.hpp>
#include <endpoint_lab/sub_interval.hpp>

namespace support
{

using endpoint_lab::function_model;
using endpoint_lab::rational;
using endpoint_lab::sub_interval;

inline const std::vector<std::string> &corpus_names()
{
    static const std::vector<std::string> names{"constant", "increasing", "decreasing", "tent", "step", "dirichlet", "thomae"};
    return names;
}

inline function_model corpus(const std::string &name)
{
    std::ifstream in(std::string(ENDPOINT_LAB_CORPUS_DIR) + "/" + name + ".json");
    std::ostringstream ss;
    ss << in.rdbuf();
    return endpoint_lab::parse_function(ss.str());
}

inline function_model dsl(const std::string &text)
{
    return endpoint_lab::parse_function(text);
}

inline rational r(std::int64_t p, std::int64_t q = 1)
{
    return rational(p, q);
}

// Fixed-seed source of rationals so every run sees the same samples.
class sampler
{
public:
    explicit sampler(std::uint64_t seed) : m_rng(seed) {}

    // Uniform-ish rational in [lo, hi] with denominator dividing a random d <= max_den.
    rational in(const rational &lo, const rational &hi, std::int64_t max_den = 97)
    {
        std::uniform_int_distribution<std::int64_t> den(1, max_den);
        const std::int64_t d = den(m_rng);
        std::uniform_int_distribution<std::int64_t> num(0, d);
        return lo + (hi - lo) * rational(num(m_rng), d);
    }

    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(m_rng);
    }

    // Closed subinterval [x, y] of [lo, hi] with x < y.
    sub_interval closed_in(const rational &lo, const rational &hi, std::int64_t max_den = 97)
    {
        for (;;) {
            rational x = in(lo, hi, max_den);
            rational y = in(lo, hi, max_den);
            if (x != y) {
                return x < y ? sub_interval::closed(x, y) : sub_interval::closed(y, x);
            }
        }
    }

private:
    std::mt19937_64 m_rng;
};

// Brute force: largest 1/q over reduced p/q in iv with q <= q_max (0 if none).
inline rational thomae_brute_sup(const sub_interval &iv, std::int64_t q_max)
{
    for (std::int64_t q = 1; q <= q_max; ++q) {
        for (std::int64_t p = 0; p <= q; ++p) {
            if (std::gcd(p, q) == 1 && iv.contains(rational(p, q))) {
                return rational(1, q);
            }
        }
    }
    return rational(0);
}

// Brute force: smallest q with a reduced p/q in iv, and the leftmost such p/q.
inline std::pair<std::int64_t, rational> brute_smallest_denominator(const sub_interval &iv, std::int64_t q_max)
{
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const std::int64_t p_lo = (iv.lo() * rational(q)).floor().get_si() - 1;
        const std::int64_t p_hi = (iv.hi() * rational(q)).ceil().get_si() + 1;
        for (std::int64_t p = p_lo; p <= p_hi; ++p) {
            if (std::gcd(p, q) == 1 && iv.contains(rational(p, q))) {
                return {q, rational(p, q)};
            }
        }
    }
    return {0, rational(0)};
}

} // namespace support

#endif
