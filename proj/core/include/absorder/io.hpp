#pragma once

#include <string>

#include "absorder/maps.hpp"
#include "absorder/report.hpp"
#include "absorder/space.hpp"

namespace absorder {

// Model descriptors: "hermitian:k", "lattice:d", and the block form
// "hermitian:k1+k2+..." for direct sums. Throws ParseError.
SpaceModel parse_model_descriptor(const std::string& descriptor);

// Element documents: JSON with fields
//   model   - model descriptor
//   level   - [m, n]
//   entries - row-major payload; [re, im] pairs on hermitian models, plain
//             reals on lattice models.
std::string element_to_json(const SpaceModel& model, const Element& v,
                            int indent = 2);
Element element_from_json(const std::string& text, SpaceModel* model_out);

// Map documents: JSON with fields
//   domain, codomain - model descriptors
//   action           - dense real matrix (array of rows) over the real
//                      coordinatization of the ambient space.
std::string map_to_json(const StarLinearMap& map, int indent = 2);
StarLinearMap map_from_json(const std::string& text, bool validate = true);

// Report documents (machine-readable mirrors of the report structs).
std::string check_report_to_json(const CheckReport& report, int indent = 2);
std::string classification_report_to_json(const ClassificationReport& report,
                                          int indent = 2);

// File helpers; throw ParseError on unreadable/malformed content.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Element read_element_file(const std::string& path, SpaceModel* model_out);
StarLinearMap read_map_file(const std::string& path, bool validate = true);

}  // namespace absorder
