#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "coronavis/sentiment.hpp"

namespace coronavis {

TermLexicon TermLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path.string());
  std::unordered_map<std::string, double> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected term<TAB>value");
    auto end = line.find('\t', tab + 1);
    std::string_view value(line.data() + tab + 1, (end == std::string::npos ? line.size() : end) - tab - 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad value");
    entries[line.substr(0, tab)] = v;
  }
  return TermLexicon(std::move(entries));
}

std::optional<double> TermLexicon::find(std::string_view term) const {
  auto it = entries_.find(std::string(term));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double score_subjectivity(std::string_view text, const SubjectivityLexicon& lexicon) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (const auto& token : tokenize(text)) {
    if (auto v = lexicon.find(token)) {
      sum += std::clamp(*v, 0.0, 1.0);
      ++hits;
    }
  }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

}  // namespace coronavis
