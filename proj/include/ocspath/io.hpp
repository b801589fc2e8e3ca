#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "ocspath/oca.hpp"
#include "ocspath/ocs.hpp"
#include "ocspath/zocs.hpp"

namespace ocspath {

// A parsed input document: one of the three system kinds.
using SystemDocument = std::variant<Ocs, Oca, ZOcs>;

// Parses a system document, canonicalizing transition order.  Throws io_error
// with a message naming the offending field on schema violations.
SystemDocument parse_system(std::istream& in);
SystemDocument parse_system(const std::string& text);

// Canonical serialization: fixed key order, sorted transitions, two-space
// indentation, trailing newline.  parse is a left inverse of serialize.
std::string serialize(const Ocs& o);
std::string serialize(const Oca& a);
std::string serialize(const ZOcs& z);
std::string serialize(const SystemDocument& doc);

// Paths serialize against their owning system so transitions can be stored
// as indices into the canonical transition list.
std::string serialize_path(const SystemDocument& doc, const Path& rho);
Path parse_path(const SystemDocument& doc, std::istream& in);
Path parse_path(const SystemDocument& doc, const std::string& text);

}  // namespace ocspath
