#pragma once

#include <map>

#include "liemult/rootdata.hpp"

namespace liemult {

/// chi^shape at the class of the given cycle type (Murnaghan-Nakayama).
Integer mn_character(const YoungDiagram& shape, const YoungDiagram& cycle_type, long cap = 25);

/// Number of permutations with the given cycle type.
Integer class_size(const YoungDiagram& cycle_type);

/// g_{lambda mu nu} from the character table of S_k.
Integer kronecker_oracle(const YoungDiagram& lambda, const YoungDiagram& mu, const YoungDiagram& nu, long cap = 10);

/// All weight multiplicities of V_lambda (Freudenthal's recursion).
std::map<Weight, Integer> weight_system(const GroupDatum& g, const Weight& lambda, std::size_t cap = 100000);

/// Decomposition of V_lambda (x) V_mu by stripping highest weights off the
/// product character. Requires dim V_lambda * dim V_mu <= cap.
std::map<Weight, Integer> tensor_oracle(const GroupDatum& g, const Weight& lambda, const Weight& mu,
                                        std::size_t cap = 100000);

}  // namespace liemult
