#include "gent/cm_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gent/errors.hpp"

namespace gent {

TwoModeCM parse_cm_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("v")) {
    throw Error(Errc::ParseError, "field \"v\" is missing");
  }
  const auto& rows = doc["v"];
  if (!rows.is_array() || rows.size() != 4) {
    throw Error(Errc::ParseError, "field \"v\" must be an array of 4 rows");
  }
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 4) {
      throw Error(Errc::ParseError, "field \"v[" + std::to_string(i) + "]\" must hold 4 numbers");
    }
    for (int j = 0; j < 4; ++j) {
      const auto& x = row[static_cast<std::size_t>(j)];
      if (!x.is_number()) {
        throw Error(Errc::ParseError, "field \"v[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]\" is not a number");
      }
      m(i, j) = x.get<double>();
      if (!std::isfinite(m(i, j))) {
        throw Error(Errc::ParseError, "field \"v[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]\" is not finite");
      }
    }
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9) {
    std::ostringstream os;
    os << "field \"v\" is not symmetric (max |v_ij - v_ji| = " << asym << ")";
    throw Error(Errc::ParseError, os.str());
  }
  return TwoModeCM(m);
}

TwoModeCM load_cm_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read CM file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cm_json(buf.str());
}

std::string cm_to_json(const TwoModeCM& v) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back(v(i, j));
    rows.push_back(row);
  }
  return nlohmann::json{{"v", rows}}.dump();
}

}  // namespace gent
