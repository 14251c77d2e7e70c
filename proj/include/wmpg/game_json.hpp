#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wmpg/game.hpp"

namespace wmpg {

using json = nlohmann::ordered_json;

struct GameFile {
  Game game;
  Rational threshold = 0;
};

inline Owner parse_owner(const std::string& s) {
  if (s == "p1") return Owner::P1;
  if (s == "p2") return Owner::P2;
  if (s == "rand") return Owner::Random;
  throw std::invalid_argument("unknown owner '" + s + "'");
}

namespace detail {
inline Rational rational_field(const json& j, const char* key) {
  const json& x = j.at(key);
  if (x.is_string()) return parse_rational(x.get<std::string>());
  if (x.is_number_integer()) return Rational(x.get<long>());
  throw std::invalid_argument(std::string("field '") + key + "' must be a rational string");
}
}  // namespace detail

/// Parses the game JSON format. Unknown edge endpoints are kept as dangling
/// edges so that validate() can report them.
inline GameFile game_from_json(const json& j) {
  std::vector<std::string> names;
  std::vector<Owner> owners;
  std::map<std::string, VertexId> index;
  for (const auto& v : j.at("vertices")) {
    auto id = v.at("id").get<std::string>();
    if (index.count(id)) throw std::invalid_argument("duplicate vertex '" + id + "'");
    index[id] = names.size();
    names.push_back(id);
    owners.push_back(parse_owner(v.at("owner").get<std::string>()));
  }
  const std::size_t n = names.size();
  std::size_t dangling = n;
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    return it == index.end() ? dangling++ : it->second;
  };
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    Edge ed;
    ed.from = lookup(e.at("from").get<std::string>());
    ed.to = lookup(e.at("to").get<std::string>());
    ed.weight = detail::rational_field(e, "weight");
    ed.prob = e.contains("prob") ? detail::rational_field(e, "prob") : Rational(0);
    if (ed.from < n && owners[ed.from] == Owner::Random && !e.contains("prob"))
      throw std::invalid_argument("edge leaving random vertex " + names[ed.from] + " lacks 'prob'");
    edges.push_back(std::move(ed));
  }
  GameFile out;
  out.game = Game(std::move(names), std::move(owners), std::move(edges),
                  j.value("name", std::string{}));
  if (j.contains("threshold")) out.threshold = detail::rational_field(j, "threshold");
  return out;
}

inline json game_to_json(const Game& g, const Rational& threshold = 0) {
  json j;
  if (!g.title().empty()) j["name"] = g.title();
  j["vertices"] = json::array();
  for (VertexId v = 0; v < g.size(); ++v)
    j["vertices"].push_back({{"id", g.name(v)}, {"owner", to_string(g.owner(v))}});
  j["edges"] = json::array();
  for (const Edge& e : g.edges()) {
    json je = {{"from", g.name(e.from)}, {"to", g.name(e.to)}, {"weight", format_rational(e.weight)}};
    if (g.owner(e.from) == Owner::Random) je["prob"] = format_rational(e.prob);
    j["edges"].push_back(std::move(je));
  }
  j["threshold"] = format_rational(threshold);
  return j;
}

inline std::string game_to_string(const Game& g, const Rational& threshold = 0) {
  return game_to_json(g, threshold).dump(2) + "\n";
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline GameFile read_game_file(const std::string& path) {
  try {
    return game_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument("'" + path + "' is not a game file: " + e.what());
  }
}

}  // namespace wmpg
