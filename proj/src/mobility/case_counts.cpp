#include <charconv>
#include <istream>

#include "coronavis/mobility.hpp"

namespace coronavis {

namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

InfectionSeries ingest_case_counts(std::istream& in, Date epoch) {
  const WeekBins grid(epoch, 0, 0);
  std::string line;
  if (!std::getline(in, line)) throw CaseCountError(0, "case-count file is empty");
  auto header = split(line);
  if (header.size() < 3 || header[0] != "state" || header[1] != "week_start" || header[2] != "cases")
    throw CaseCountError(0, "expected header state,week_start,cases");

  InfectionSeries series;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto where = " at row " + std::to_string(row);
    auto fields = split(line);
    if (fields.size() != header.size()) throw CaseCountError(row, "wrong field count" + where);
    auto state = StateCode::parse(fields[0]);
    if (!state) throw CaseCountError(row, "unknown state '" + std::string(fields[0]) + "'" + where);
    auto week = parse_date(fields[1]);
    if (!week) throw CaseCountError(row, "bad week_start" + where);
    if (!grid.aligned(*week))
      throw CaseCountError(row, "week_start " + std::string(fields[1]) + " is not on a week boundary" + where);
    auto text = fields[2];
    if (!text.empty() && text.front() == '-') throw CaseCountError(row, "negative case count" + where);
    std::uint64_t cases = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cases);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
      throw CaseCountError(row, "bad case count" + where);
    if (!series.cases.emplace(std::pair{*state, *week}, cases).second)
      throw CaseCountError(row, "duplicate (state, week)" + where);
  }
  return series;
}

}  // namespace coronavis
