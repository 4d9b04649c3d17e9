#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kvisits/instances.hpp"
#include "kvisits/pm.hpp"
#include "kvisits/reductions.hpp"

// Line-oriented text formats. The first significant line is `<tag> <version>`; each
// following line is `<key> <integers...>`. `#` starts a comment, blank lines are ignored.
namespace kvisits::io {

inline constexpr int format_version = 1;

using Document = std::variant<KVisitsInstance, VarKVisitsInstance, Schedule, pm::Instance,
                              reductions::Rn3dmInstance, reductions::In3dmInstance,
                              reductions::ThresholdPinwheelInstance>;

// Throws Error(ParseError) with the offending line number.
Document parse(std::string_view text);
// Splits a stream holding several documents; each starts at a header line.
std::vector<Document> parse_all(std::string_view text);

KVisitsInstance parse_kvisits(std::string_view text);
VarKVisitsInstance parse_var_kvisits(std::string_view text);
Schedule parse_schedule(std::string_view text);
pm::Instance parse_pm(std::string_view text);
reductions::Rn3dmInstance parse_rn3dm(std::string_view text);
reductions::In3dmInstance parse_in3dm(std::string_view text);
reductions::ThresholdPinwheelInstance parse_tpws(std::string_view text);

std::string to_text(const KVisitsInstance& v);
std::string to_text(const VarKVisitsInstance& v);
std::string to_text(const Schedule& v);
std::string to_text(const pm::Instance& v);
std::string to_text(const reductions::Rn3dmInstance& v);
std::string to_text(const reductions::In3dmInstance& v);
std::string to_text(const reductions::ThresholdPinwheelInstance& v);
std::string to_text(const Document& doc);

std::string_view tag_of(const Document& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace kvisits::io
