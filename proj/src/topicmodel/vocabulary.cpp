#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coronavis/topicmodel.hpp"

namespace coronavis {

std::optional<Eigen::Index> Vocabulary::find(const std::string& term) const {
  auto it = index.find(term);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenList> docs, const StopwordPolicy& policy, std::size_t min_df,
                            double max_df_fraction) {
  if (min_df < 1) throw std::invalid_argument("min_df must be at least 1");
  if (!(max_df_fraction > 0.0 && max_df_fraction <= 1.0))
    throw std::invalid_argument("max_df_fraction must be in (0, 1]");

  std::map<std::string, int> df;
  for (const auto& doc : docs) {
    std::set<std::string_view> seen(doc.begin(), doc.end());
    for (auto term : seen)
      if (!policy.contains(term)) ++df[std::string(term)];
  }
  const double max_df = max_df_fraction * static_cast<double>(docs.size());

  Vocabulary vocab;
  std::vector<int> kept_df;
  for (const auto& [term, count] : df) {
    if (static_cast<std::size_t>(count) < min_df || static_cast<double>(count) > max_df) continue;
    vocab.index.emplace(term, static_cast<Eigen::Index>(vocab.terms.size()));
    vocab.terms.push_back(term);
    kept_df.push_back(count);
  }
  if (vocab.terms.empty()) throw EmptyVocabulary("no term survived stopword and frequency pruning");
  vocab.document_frequency = Eigen::Map<const Eigen::VectorXi>(kept_df.data(), static_cast<Eigen::Index>(kept_df.size()));
  return vocab;
}

DocTermMatrix build_doc_term_matrix(std::span<const TokenList> docs, const Vocabulary& vocab) {
  std::vector<Eigen::Triplet<int>> entries;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (const auto& token : docs[d])
      if (auto t = vocab.find(token)) entries.emplace_back(static_cast<int>(d), static_cast<int>(*t), 1);
  DocTermMatrix dtm(static_cast<Eigen::Index>(docs.size()), vocab.size());
  dtm.setFromTriplets(entries.begin(), entries.end());  // duplicates are summed
  dtm.makeCompressed();
  return dtm;
}

Eigen::VectorXd inverse_document_frequency(const Vocabulary& vocab, Eigen::Index documents, IdfVariant variant) {
  const Eigen::ArrayXd df = vocab.document_frequency.cast<double>().array();
  const double n = static_cast<double>(documents);
  if (variant == IdfVariant::plain) return (n / df).log().matrix();
  return (((1.0 + n) / (1.0 + df)).log() + 1.0).matrix();
}

TfIdfMatrix tfidf(const DocTermMatrix& dtm, const Vocabulary& vocab, IdfVariant variant) {
  const Eigen::VectorXd idf = inverse_document_frequency(vocab, dtm.rows(), variant);
  TfIdfMatrix weights = dtm.cast<double>();
  for (Eigen::Index d = 0; d < weights.outerSize(); ++d)
    for (TfIdfMatrix::InnerIterator it(weights, d); it; ++it) it.valueRef() *= idf(it.col());
  return weights;
}

}  // namespace coronavis
