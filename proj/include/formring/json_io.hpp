#ifndef FORMRING_JSON_IO_HPP
#define FORMRING_JSON_IO_HPP

#include <json.hpp>

#include "formring/pairs.hpp"

namespace formring {

using Json = nlohmann::ordered_json;

Json context_to_json(const RingPtr& ring);
RingPtr context_from_json(const Json& j);

/// Integers small enough for JSON stay numbers; everything else is a
/// string in the context's canonical syntax.
Json value_to_json(const Value& v);
Value value_from_json(const Json& j, const RingPtr& ring);

Json form_to_json(const BinaryForm& f);
BinaryForm form_from_json(const Json& j);

Json mult_table_to_json(const MultTable& t);
MultTable mult_table_from_json(const Json& j);

Json action_table_to_json(const ActionTable& t);
ActionTable action_table_from_json(const Json& j);

Json pair_to_json(const BinaryPair& p);
BinaryPair pair_from_json(const Json& j);

Json matrix_to_json(const ValueMat& m);
ValueMat matrix_from_json(const Json& j, const RingPtr& ring);

}  // namespace formring

#endif
