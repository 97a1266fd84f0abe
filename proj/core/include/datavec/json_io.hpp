#pragma once

#include <string>
#include <string_view>

#include "datavec/expressibility.hpp"
#include "datavec/histogram.hpp"
#include "datavec/interner.hpp"
#include "datavec/vector.hpp"
#include "datavec/witness.hpp"

namespace datavec {

// JSON conventions shared by all readers and writers:
//  * data values appear as strings and go through the interner;
//  * integers are JSON numbers when they fit 64 bits and decimal strings
//    otherwise — readers accept both, plus integral doubles;
//  * malformed input throws ParseError.
//
// Vector:    {"d": 2, "entries": {"a": [1, -2], "b": [0, 3]}}
// Instance:  {"d": 1, "V": [{"a": [1]}, {}], "x": {"b": [2]}}
//            (member and target vectors are bare entry maps; the single
//             "d" gives every vector's dimension)
// Histogram: {"rows": ["a", "b"], "entries": [["a", "c", 2]]}
//            (the degree is recomputed from the cells, never read)
// Witness:   {"terms": [{"base": 0, "map": {"a": "b"}}]}

DataVector parse_vector_json(std::string_view text, Interner& interner);
std::string format_vector_json(const DataVector& v, const Interner& interner);

ExpressibilityInstance parse_instance_json(std::string_view text, Interner& interner);
std::string format_instance_json(const ExpressibilityInstance& inst, const Interner& interner);

Histogram parse_histogram_json(std::string_view text, Interner& interner);
std::string format_histogram_json(const Histogram& h, const Interner& interner);

PermutationSumWitness parse_witness_json(std::string_view text, Interner& interner);
std::string format_witness_json(const PermutationSumWitness& w, const Interner& interner);

}  // namespace datavec
