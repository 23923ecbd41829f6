#include "sfg/games/game_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sfg/matrix_io.hpp"

namespace sfg::games {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("game file, line " + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace

void save_game(const Game& game, std::ostream& os) {
  os << "players 2\n";
  for (std::size_t id = 0; id < game.num_nodes(); ++id) {
    const GameNode& nd = game.node(id);
    const bool chance_edge =
        nd.parent >= 0 && game.node(nd.parent).player == kChance;
    if (nd.terminal) {
      os << "leaf " << id << " parent=" << nd.parent << " action="
         << game.action_name(nd.action) << " u1=" << format_double(nd.utility);
      if (chance_edge) os << " chance=" << format_double(nd.chance_prob);
      os << '\n';
      continue;
    }
    os << "node " << id << " player=" << static_cast<int>(nd.player);
    if (nd.parent < 0) {
      os << " parent=- action=-";
    } else {
      os << " parent=" << nd.parent
         << " action=" << game.action_name(nd.action);
    }
    if (nd.player != kChance) os << " infoset=" << nd.infoset;
    if (chance_edge) os << " chance=" << format_double(nd.chance_prob);
    os << '\n';
  }
}

void save_game(const Game& game, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  save_game(game, os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Game load_game(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;

  // key=value attributes after the id token.
  auto split_attrs = [&](std::istringstream& ss)
      -> std::unordered_map<std::string, std::string> {
    std::unordered_map<std::string, std::string> attrs;
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) parse_fail(line_no, "expected key=value, got '" + tok + "'");
      attrs[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return attrs;
  };

  if (!std::getline(is, line)) parse_fail(1, "empty file");
  ++line_no;
  if (line != "players 2") parse_fail(line_no, "expected header 'players 2'");

  GameBuilder gb;
  std::unordered_map<long, std::int32_t> id_map;
  bool saw_root = false;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string kind;
    long file_id;
    if (!(ss >> kind >> file_id)) parse_fail(line_no, "malformed line");
    if (kind != "node" && kind != "leaf") {
      parse_fail(line_no, "unknown record '" + kind + "'");
    }
    auto attrs = split_attrs(ss);

    auto need = [&](const char* key) -> std::string {
      auto it = attrs.find(key);
      if (it == attrs.end()) {
        parse_fail(line_no, std::string("missing attribute '") + key + "'");
      }
      return it->second;
    };

    std::int32_t parent = -1;
    const std::string parent_str = need("parent");
    if (parent_str != "-") {
      auto it = id_map.find(std::stol(parent_str));
      if (it == id_map.end()) {
        parse_fail(line_no, "unknown parent id " + parent_str);
      }
      parent = it->second;
    }
    const std::string action_str = need("action");
    const std::int32_t action =
        action_str == "-" ? -1 : gb.action_id(action_str);
    double chance_prob = 1.0;
    if (auto it = attrs.find("chance"); it != attrs.end()) {
      chance_prob = std::stod(it->second);
    }

    std::int32_t internal;
    if (kind == "leaf") {
      if (parent < 0) parse_fail(line_no, "leaf cannot be the root");
      internal =
          gb.add_terminal(parent, action, std::stod(need("u1")), chance_prob);
    } else {
      const int player = std::stoi(need("player"));
      if (player < 0 || player > 2) parse_fail(line_no, "player out of range");
      std::int32_t infoset = -1;
      if (player != kChance) infoset = std::stoi(need("infoset"));
      if (parent < 0) {
        if (saw_root) parse_fail(line_no, "second root");
        saw_root = true;
      }
      internal = gb.add_node(parent, action, player, infoset, chance_prob);
    }
    if (!id_map.emplace(file_id, internal).second) {
      parse_fail(line_no, "duplicate node id " + std::to_string(file_id));
    }
  }
  if (!saw_root) parse_fail(line_no, "no root node");
  try {
    return gb.finish();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("game file invalid: ") + e.what());
  }
}

Game load_game(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_game(is);
}

}  // namespace sfg::games
