#include "star/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace star {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line;
  auto hash = body.find('#');
  if (hash != std::string::npos) body = body.substr(0, hash);
  std::istringstream ls(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (ls >> tok) tokens.push_back(tok);
  return tokens;
}

NodeId parse_node_id(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    NodeId id = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return id;
  } catch (const std::exception&) {
    fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": bad node id '" + tok + "'");
  }
}

}  // namespace

SocialRequestGraph parse_instance(std::istream& in, int precision) {
  std::vector<NodeId> nodes;
  std::vector<SocialPair> social;
  std::vector<RequestEdge> requests;
  std::map<NodeId, Amount> provider_caps;

  std::string line;
  int line_no = 0;
  int next_edge = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    auto want = [&](std::size_t lo, std::size_t hi) {
      if (tokens.size() < lo + 1 || tokens.size() > hi + 1)
        fail(ErrorCode::MalformedLine,
             "line " + std::to_string(line_no) + ": '" + kind + "' takes " + std::to_string(lo) +
                 (hi == lo ? "" : ".." + std::to_string(hi)) + " fields");
    };
    if (kind == "node") {
      want(1, 1);
      nodes.push_back(parse_node_id(tokens[1], line_no));
    } else if (kind == "social") {
      want(4, 4);
      SocialPair p;
      p.i = parse_node_id(tokens[1], line_no);
      p.j = parse_node_id(tokens[2], line_no);
      p.cap_ij = parse_decimal(tokens[3], precision);
      p.cap_ji = parse_decimal(tokens[4], precision);
      social.push_back(p);
    } else if (kind == "request") {
      want(4, 5);
      RequestEdge e;
      e.edge_id = next_edge++;
      e.provider = parse_node_id(tokens[1], line_no);
      e.requester = parse_node_id(tokens[2], line_no);
      e.capacity = parse_decimal(tokens[3], precision);
      e.utility_per_unit = parse_decimal(tokens[4], precision);
      if (tokens.size() == 6) {
        if (tokens[5] != "virtual")
          fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": expected 'virtual'");
        e.is_virtual = true;
      }
      requests.push_back(e);
    } else if (kind == "provider_cap") {
      want(2, 2);
      NodeId id = parse_node_id(tokens[1], line_no);
      if (provider_caps.count(id))
        fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": duplicate provider_cap");
      provider_caps[id] = parse_decimal(tokens[2], precision);
    } else {
      fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
    }
  }
  return build_graph(std::move(nodes), std::move(social), std::move(requests),
                     std::move(provider_caps), precision);
}

SocialRequestGraph parse_instance_file(const std::string& path, int precision) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  return parse_instance(in, precision);
}

void write_instance(std::ostream& out, const SocialRequestGraph& g) {
  std::int64_t unit = pow10(g.precision);
  for (NodeId id : g.nodes) out << "node " << id << "\n";
  for (const auto& p : g.social)
    out << "social " << p.i << " " << p.j << " " << format_decimal(p.cap_ij, unit) << " "
        << format_decimal(p.cap_ji, unit) << "\n";
  for (const auto& e : g.requests) {
    out << "request " << e.provider << " " << e.requester << " "
        << format_decimal(e.capacity, unit) << " " << format_decimal(e.utility_per_unit, unit);
    if (e.is_virtual) out << " virtual";
    out << "\n";
  }
  for (const auto& [id, cap] : g.provider_caps)
    out << "provider_cap " << id << " " << format_decimal(cap, unit) << "\n";
}

Flow parse_flow(std::istream& in, const SocialRequestGraph& g) {
  Flow f;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (kind == "request_flow") {
      if (tokens.size() != 5)
        fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": request_flow takes 4 fields");
      int edge_id = static_cast<int>(parse_node_id(tokens[3], line_no));
      Amount value = parse_decimal(tokens[4], g.precision);
      const RequestEdge* e = g.find_request(edge_id);
      if (!e) fail(ErrorCode::KeyMismatch, "line " + std::to_string(line_no) + ": unknown edge id");
      f.add_request(edge_id, value);
    } else if (kind == "social_flow") {
      if (tokens.size() != 4)
        fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": social_flow takes 3 fields");
      NodeId i = parse_node_id(tokens[1], line_no);
      NodeId j = parse_node_id(tokens[2], line_no);
      Amount value = parse_decimal(tokens[3], g.precision);
      f.add_social(i, j, value);
    } else if (kind.find('=') != std::string::npos) {
      continue;  // summary line
    } else {
      fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
    }
  }
  return f;
}

void write_flow(std::ostream& out, const SocialRequestGraph& g, const Flow& f) {
  std::int64_t unit = pow10(g.precision);
  for (const auto& e : g.requests) {
    Amount v = f.request(e.edge_id);
    if (v == 0) continue;
    out << "request_flow " << e.provider << " " << e.requester << " " << e.edge_id << " "
        << format_decimal(v, unit) << "\n";
  }
  for (const auto& p : g.social) {
    Amount v = f.social(p.i, p.j);
    if (v == 0) continue;
    out << "social_flow " << p.i << " " << p.j << " " << format_decimal(v, unit) << "\n";
  }
}

}  // namespace star
