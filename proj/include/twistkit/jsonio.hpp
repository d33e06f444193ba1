#ifndef TWISTKIT_JSONIO_HPP
#define TWISTKIT_JSONIO_HPP

#include "twistkit/rmat.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace twistkit
{

/// Malformed JSON document (syntax, missing fields, unknown symbols).
class DocumentError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Lie-element document: [{"coef": gr-string, "gen": symbol}], sorted by index.
nlohmann::ordered_json lie_element_to_json(const LieAlgebra &alg, const LieElement &x);
LieElement lie_element_from_json(const LieAlgebra &alg, const nlohmann::json &doc);

/// {"name", "generators": [{"symbol", "zdegree"}],
///  "brackets": [{"lhs": [s, s], "rhs": [{"coef", "gen"}]}]}
nlohmann::ordered_json algebra_to_json(const LieAlgebra &alg);
LieAlgebra algebra_from_json(const nlohmann::json &doc);

/// {"label", "params": {"gamma", "delta", "mu"}, "alphas", "betas",
///  "source": algebra, "target": algebra,
///  "images": [{"gen": source symbol, "image": lie element over target}]}
nlohmann::ordered_json embedding_to_json(const EmbeddingRecipe &rec);
EmbeddingRecipe embedding_from_json(const nlohmann::json &doc);

/// [{"pair": [s1, s2], "coef": gr-string}], sorted by generator indices.
nlohmann::ordered_json classical_r_to_json(const ClassicalR &r);
ClassicalR classical_r_from_json(const LieAlgebra &alg, const nlohmann::json &doc);

nlohmann::ordered_json params_to_json(const Params &p);

/// Reads and parses a file; throws DocumentError on I/O or syntax errors.
nlohmann::json read_json_file(const std::string &path);

} // namespace twistkit

#endif
