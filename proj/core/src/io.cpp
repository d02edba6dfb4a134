#include "absorder/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace absorder {

using nlohmann::json;

SpaceModel parse_model_descriptor(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos)
    throw ParseError("model descriptor needs the form kind:size, got '" +
                     descriptor + "'");
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest = descriptor.substr(colon + 1);
  auto parse_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(s, &used);
      if (used != s.size() || value <= 0) throw std::invalid_argument(s);
      return value;
    } catch (const std::exception&) {
      throw ParseError("bad size '" + s + "' in model descriptor '" +
                       descriptor + "'");
    }
  };
  if (kind == "lattice") return SpaceModel::lattice(parse_int(rest));
  if (kind == "hermitian") {
    std::vector<int> blocks;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto plus = rest.find('+', pos);
      const std::string tok =
          rest.substr(pos, plus == std::string::npos ? std::string::npos
                                                     : plus - pos);
      blocks.push_back(parse_int(tok));
      if (plus == std::string::npos) break;
      pos = plus + 1;
    }
    if (blocks.size() == 1) return SpaceModel::hermitian(blocks[0]);
    return SpaceModel::hermitian_blocks(std::move(blocks));
  }
  throw ParseError("unknown model kind '" + kind + "'");
}

namespace {

json element_payload_to_json(const SpaceModel& model, const Element& v) {
  json entries = json::array();
  if (model.is_lattice()) {
    for (Eigen::Index i = 0; i < v.coords.rows(); ++i)
      entries.push_back(v.coords(i, 0).real());
  } else {
    for (Eigen::Index r = 0; r < v.coords.rows(); ++r)
      for (Eigen::Index c = 0; c < v.coords.cols(); ++c)
        entries.push_back(
            json::array({v.coords(r, c).real(), v.coords(r, c).imag()}));
  }
  return json{{"model", model.descriptor()},
              {"level", json::array({v.level.m, v.level.n})},
              {"entries", std::move(entries)}};
}

Element element_from_json_value(const json& j, SpaceModel* model_out) {
  if (!j.is_object() || !j.contains("model") || !j.contains("level") ||
      !j.contains("entries"))
    throw ParseError("element document needs fields model, level, entries");
  const SpaceModel model = parse_model_descriptor(j.at("model").get<std::string>());
  const auto& lvl = j.at("level");
  if (!lvl.is_array() || lvl.size() != 2)
    throw ParseError("level must be [m, n]");
  const Level level{lvl.at(0).get<int>(), lvl.at(1).get<int>()};
  const auto& entries = j.at("entries");
  if (!entries.is_array()) throw ParseError("entries must be an array");

  Element v;
  v.level = level;
  if (model.is_lattice()) {
    if (!(level == Level{1, 1}))
      throw ParseError("lattice elements live at level [1, 1]");
    if (static_cast<int>(entries.size()) != model.ambient_size())
      throw ParseError("entry count does not match the lattice dimension");
    v.coords.resize(model.ambient_size(), 1);
    for (int i = 0; i < model.ambient_size(); ++i)
      v.coords(i, 0) = Cplx(entries.at(static_cast<std::size_t>(i)).get<double>(), 0.0);
  } else {
    const int rows = level.m * model.ambient_size();
    const int cols = level.n * model.ambient_size();
    if (static_cast<int>(entries.size()) != rows * cols)
      throw ParseError("entry count does not match level and model size");
    v.coords.resize(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto& pair = entries.at(static_cast<std::size_t>(r * cols + c));
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("hermitian entries must be [re, im] pairs");
        v.coords(r, c) = Cplx(pair.at(0).get<double>(), pair.at(1).get<double>());
      }
    }
  }
  try {
    validate_shape(model, v);
    if (!pattern_respected(model, v, 1e-9))
      throw ParseError("entries violate the block pattern of " +
                       model.descriptor());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (model_out) *model_out = model;
  return v;
}

json witness_to_json(const Witness& w) {
  json items = json::array();
  for (const auto& it : w.items) {
    const SpaceModel m = parse_model_descriptor(it.model);
    json payload = element_payload_to_json(m, it.element);
    payload["label"] = it.label;
    items.push_back(std::move(payload));
  }
  json j{{"description", w.description},
         {"seed", w.seed},
         {"trial", w.trial},
         {"elements", std::move(items)}};
  if (std::isfinite(w.residual))
    j["residual"] = w.residual;
  else
    j["residual"] = "non-finite";
  return j;
}

json check_report_to_json_value(const CheckReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json je{{"name", e.name},
            {"method", to_string(e.method)},
            {"trials", e.trials},
            {"failures", e.failures},
            {"max_residual", e.max_residual}};
    if (e.witness) je["witness"] = witness_to_json(*e.witness);
    entries.push_back(std::move(je));
  }
  return json{{"title", report.title},
              {"entries", std::move(entries)},
              {"notes", report.notes},
              {"passed", report.passed()}};
}

json classification_report_to_json_value(const ClassificationReport& report) {
  json verdicts = json::object();
  for (const auto& [name, r] : report.verdicts) {
    json jr{{"verdict", to_string(r.verdict)},
            {"method", to_string(r.method)},
            {"samples", r.samples},
            {"max_residual", r.max_residual}};
    if (r.witness) jr["witness"] = witness_to_json(*r.witness);
    verdicts[name] = std::move(jr);
  }
  return json{{"title", report.title},
              {"verdicts", std::move(verdicts)},
              {"levels_tested", report.levels_tested},
              {"sample_count", report.sample_count},
              {"equivalences_hold", report.equivalences_hold},
              {"notes", report.notes}};
}

}  // namespace

std::string element_to_json(const SpaceModel& model, const Element& v,
                            int indent) {
  validate_shape(model, v);
  return element_payload_to_json(model, v).dump(indent);
}

Element element_from_json(const std::string& text, SpaceModel* model_out) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return element_from_json_value(j, model_out);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed element document: ") + e.what());
  }
}

std::string map_to_json(const StarLinearMap& map, int indent) {
  json action = json::array();
  for (Eigen::Index r = 0; r < map.action().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < map.action().cols(); ++c)
      row.push_back(map.action()(r, c));
    action.push_back(std::move(row));
  }
  return json{{"domain", map.domain().descriptor()},
              {"codomain", map.codomain().descriptor()},
              {"action", std::move(action)}}
      .dump(indent);
}

StarLinearMap map_from_json(const std::string& text, bool validate) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") ||
        !j.contains("action"))
      throw ParseError("map document needs fields domain, codomain, action");
    const SpaceModel dom =
        parse_model_descriptor(j.at("domain").get<std::string>());
    const SpaceModel cod =
        parse_model_descriptor(j.at("codomain").get<std::string>());
    const auto& action = j.at("action");
    if (!action.is_array() || action.empty())
      throw ParseError("action must be a nonempty array of rows");
    const int rows = static_cast<int>(action.size());
    const int cols = static_cast<int>(action.at(0).size());
    RMat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      const auto& row = action.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        throw ParseError("action rows have inconsistent lengths");
      for (int c = 0; c < cols; ++c)
        m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return StarLinearMap(dom, cod, std::move(m), validate);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed map document: ") + e.what());
  }
}

std::string check_report_to_json(const CheckReport& report, int indent) {
  return check_report_to_json_value(report).dump(indent);
}

std::string classification_report_to_json(const ClassificationReport& report,
                                          int indent) {
  return classification_report_to_json_value(report).dump(indent);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

Element read_element_file(const std::string& path, SpaceModel* model_out) {
  return element_from_json(read_text_file(path), model_out);
}

StarLinearMap read_map_file(const std::string& path, bool validate) {
  return map_from_json(read_text_file(path), validate);
}

}  // namespace absorder
