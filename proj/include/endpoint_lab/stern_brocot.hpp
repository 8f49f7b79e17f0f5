#ifndef ENDPOINT_LAB_STERN_BROCOT_HPP
#define ENDPOINT_LAB_STERN_BROCOT_HPP

#include <endpoint_lab/rational.hpp>
#include <endpoint_lab/sub_interval.hpp>

namespace endpoint_lab
{

struct denominator_witness {
    mpz_class denominator;
    rational witness;
};

// Least denominator among the reduced fractions in iv, with the leftmost
// fraction attaining it. Found by mediant descent in the Stern-Brocot tree,
// taking runs of same-direction steps in one galloping search.
denominator_witness smallest_denominator(const sub_interval &iv);

} // namespace endpoint_lab

#endif
