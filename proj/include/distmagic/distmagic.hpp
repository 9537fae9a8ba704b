#ifndef DISTMAGIC_DISTMAGIC_HPP
#define DISTMAGIC_DISTMAGIC_HPP

#include "distmagic/canonical.hpp"
#include "distmagic/codec.hpp"
#include "distmagic/families.hpp"
#include "distmagic/graph.hpp"
#include "distmagic/search.hpp"
#include "distmagic/subset.hpp"

#endif  // DISTMAGIC_DISTMAGIC_HPP
