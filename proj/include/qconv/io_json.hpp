#pragma once

#include <string>

#include "qconv/coherify.hpp"
#include "qconv/complex_matrix.hpp"
#include "qconv/latin.hpp"

#include <nlohmann/json_fwd.hpp>

namespace qconv {

// Shared file formats. Matrices: {"rows": n, "cols": m, "re": [...],
// "im": [...]} row-major; readers reject length mismatches. Latin objects:
// {"d": n, "arity": k, "cells": [...]}. Basis families: {"d": n, "V": [...]}.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json latin_to_json(const LatinHypercube& h);
LatinHypercube latin_from_json(const nlohmann::json& j);

nlohmann::json bases_to_json(const BasisFamily& b);
BasisFamily bases_from_json(const nlohmann::json& j);

nlohmann::json tensor_to_json(const PermutationTensor& t);
PermutationTensor tensor_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace qconv
