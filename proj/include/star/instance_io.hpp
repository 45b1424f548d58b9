#pragma once

#include <iosfwd>

#include "star/graph.hpp"

namespace star {

// Line-oriented instance format ('#' starts a comment):
//   node <id>
//   social <i> <j> <S_ij> <S_ji>
//   request <i> <j> <R_ij> <U_ij> [virtual]
//   provider_cap <i> <C_i>
// Numbers are decimal strings with at most `precision` fractional digits.
// Request edge ids are assigned in file order starting at 0.
SocialRequestGraph parse_instance(std::istream& in, int precision);
SocialRequestGraph parse_instance_file(const std::string& path, int precision);

void write_instance(std::ostream& out, const SocialRequestGraph& g);

// Flow format, shared by the solver output and the decompose input:
//   request_flow <provider> <requester> <edge_id> <value>
//   social_flow <i> <j> <value>        (canonical i < j, signed net i -> j)
// Zero entries are omitted; summary lines ("key=value") are ignored on parse.
Flow parse_flow(std::istream& in, const SocialRequestGraph& g);
void write_flow(std::ostream& out, const SocialRequestGraph& g, const Flow& f);

}  // namespace star
