#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "qsearch/game.hpp"

namespace qsearch {

/// PG(2,q) strategy: ask q of the q+1 lines through a fixed point, then walk
/// the surviving points of the line that answered YES (or of the unasked line).
/// At most 2q-1 queries. Requires n = 3.
std::unique_ptr<Searcher> make_plane_searcher(const ProjectiveSpace& space);

/// Dimension-reducing strategy: inside the current subspace W, ask q of the
/// q+1 hyperplanes of W through a codimension-2 subspace U, then continue in U
/// or in the identified hyperplane, whose first query U is already answered.
/// Every query is lifted to a hyperplane of the whole space. At most
/// (q-1)(n-1)+1 queries.
std::unique_ptr<Searcher> make_inductive_searcher(const ProjectiveSpace& space);

/// Two rounds: the n coordinate hyperplanes, then the ratio hyperplanes along a
/// star on the nonzero coordinates. Exactly n + (|NZ|-1)(q-2) queries.
std::unique_ptr<Searcher> make_two_round_searcher(const ProjectiveSpace& space);

/// Asks lines in a seeded random order, skipping lines that cannot shrink its
/// candidate set, and announces once a single candidate remains. Requires n = 3.
std::unique_ptr<Searcher> make_random_line_searcher(const ProjectiveSpace& space,
                                                    std::uint64_t seed);

/// Builds a searcher from its name: "plane", "inductive", "two-round" or
/// "random-lines:<seed>". Throws Precondition for unknown names.
std::unique_ptr<Searcher> make_searcher(const ProjectiveSpace& space, std::string_view name);

}  // namespace qsearch
