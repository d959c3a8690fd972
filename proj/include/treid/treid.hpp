#ifndef TREID_TREID_HPP
#define TREID_TREID_HPP

// Groups acting on spherically symmetric rooted trees: finite level
// quotients, twisted conjugacy (Reidemeister) classes of automorphisms
// induced by tree isometries, and machine-checkable separation certificates.

#include "treid/certificates.hpp"
#include "treid/errors.hpp"
#include "treid/json_io.hpp"
#include "treid/perm.hpp"
#include "treid/perm_group.hpp"
#include "treid/portrait.hpp"
#include "treid/quotient.hpp"
#include "treid/transitive_subgroups.hpp"
#include "treid/tree.hpp"
#include "treid/twisted.hpp"
#include "treid/witness.hpp"
#include "treid/wreath.hpp"

#endif  // TREID_TREID_HPP
