#pragma once

#include "ocssg/model.hpp"

#include <string>
#include <string_view>

namespace ocssg::testing {

std::string read_data(const std::string& name);

Ssg ssg_from(std::string_view text);
OcSsg oc_from(std::string_view text);

// The five-state game in which Min needs memory to keep Term{j} below 1.
OcSsg appendix_game();
StateIndex appendix_v();

// s flips a fair coin between t and t'.
Ssg condon_fair_coin();
Ssg condon_biased(const Rational& to_t);

// Single Random state with self-loops -1 and +1.
Arena fair_walk();
// Single Random state: -1 with probability p, else +1.
Arena biased_walk(const Rational& down);
// Random two-state chain with drift +1 or -1 that is not deterministic.
Arena drift_chain(int sign);

// Exact probability that the fair +-1 walk from 0 reaches -a within n steps.
double fair_walk_hit_within(long a, long n);

}  // namespace ocssg::testing
