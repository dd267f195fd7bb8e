#pragma once

#include "common.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace textnmf {

/// One stored count: zeros are never stored.
struct CountEntry {
    Index term = 0;
    Index doc = 0;
    std::int64_t count = 0;
};

/**
 * @brief Sparse nonnegative term-by-document count matrix with its
 * vocabulary. Entries are kept sorted by (doc, term).
 */
struct CountMatrix {
    Index n_terms = 0;
    Index n_docs = 0;
    std::vector<CountEntry> entries;
    std::vector<std::string> vocabulary;

    /// Sorts entries and checks every structural invariant: positive counts,
    /// in-range ids, no duplicate (term, doc) pairs, no empty documents.
    void validate() {
        TEXTNMF_ASSERT(n_terms > 0 && n_docs > 0,
                       "CountMatrix: dimensions must be positive");
        TEXTNMF_ASSERT(vocabulary.size() == static_cast<size_t>(n_terms),
                       "CountMatrix: vocabulary size must equal n_terms");
        std::sort(entries.begin(), entries.end(),
                  [](const CountEntry& a, const CountEntry& b) {
                      return a.doc != b.doc ? a.doc < b.doc : a.term < b.term;
                  });
        std::vector<bool> doc_seen(static_cast<size_t>(n_docs), false);
        const CountEntry* prev = nullptr;
        for (const CountEntry& e : entries) {
            if (e.count <= 0) {
                throw data_error("CountMatrix: stored counts must be positive");
            }
            if (e.term < 0 || e.term >= n_terms || e.doc < 0 ||
                e.doc >= n_docs) {
                throw data_error("CountMatrix: term or doc id out of range");
            }
            if (prev != nullptr && prev->doc == e.doc && prev->term == e.term) {
                throw data_error("CountMatrix: duplicate (term, doc) pair");
            }
            doc_seen[static_cast<size_t>(e.doc)] = true;
            prev = &e;
        }
        for (Index d = 0; d < n_docs; ++d) {
            if (!doc_seen[static_cast<size_t>(d)]) {
                throw data_error("CountMatrix: document " + std::to_string(d) +
                                 " has no counts");
            }
        }
    }
};

/// Dense nonnegative feature matrix (terms by documents) plus vocabulary.
struct TfIdfMatrix {
    RealMatrix values;
    std::vector<std::string> vocabulary;

    Index n_terms() const { return values.rows(); }
    Index n_docs() const { return values.cols(); }
};

/// Per-document label assignment; ids live in {0, ..., n_labels-1}.
struct LabelVector {
    std::vector<int> ids;
    int n_labels = 0;

    Index n_docs() const { return static_cast<Index>(ids.size()); }

    void validate() const {
        TEXTNMF_ASSERT(n_labels > 0, "LabelVector: n_labels must be positive");
        for (int id : ids) {
            if (id < 0 || id >= n_labels) {
                throw data_error("LabelVector: label id out of range");
            }
        }
    }

    /// True iff every label id occurs at least once (required for training
    /// splits and for macro-averaged accuracy).
    bool covers_all_labels() const {
        std::vector<bool> seen(static_cast<size_t>(n_labels), false);
        for (int id : ids) {
            seen[static_cast<size_t>(id)] = true;
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
};

/// Train/test document-id lists of a fixed split.
struct Split {
    std::vector<Index> train;
    std::vector<Index> test;
};

/**
 * @brief Term frequencies: each count divided by the maximum count within
 * its document, so values lie in [0, 1] and every document's most frequent
 * term scores exactly 1.
 */
inline RealMatrix compute_tf(const CountMatrix& counts) {
    std::vector<std::int64_t> doc_max(static_cast<size_t>(counts.n_docs), 0);
    for (const CountEntry& e : counts.entries) {
        doc_max[static_cast<size_t>(e.doc)] =
            std::max(doc_max[static_cast<size_t>(e.doc)], e.count);
    }
    for (Index d = 0; d < counts.n_docs; ++d) {
        TEXTNMF_ASSERT(doc_max[static_cast<size_t>(d)] > 0,
                       "compute_tf: empty document");
    }
    RealMatrix tf = RealMatrix::Zero(counts.n_terms, counts.n_docs);
    for (const CountEntry& e : counts.entries) {
        tf(e.term, e.doc) = static_cast<double>(e.count) /
                            static_cast<double>(doc_max[static_cast<size_t>(e.doc)]);
    }
    return tf;
}

/**
 * @brief Inverse document frequencies ln(N / n_tau) per term.
 *
 * Terms occurring in no document get idf 0, which zeroes their feature row
 * instead of propagating an infinity; such rows typically disappear in the
 * vocabulary pruning step anyway.
 */
inline RealVector compute_idf(const CountMatrix& counts) {
    TEXTNMF_ASSERT(counts.n_docs >= 1, "compute_idf: need at least 1 document");
    RealVector doc_freq = RealVector::Zero(counts.n_terms);
    for (const CountEntry& e : counts.entries) {
        doc_freq[e.term] += 1.0;
    }
    const double n = static_cast<double>(counts.n_docs);
    RealVector idf(counts.n_terms);
    for (Index t = 0; t < counts.n_terms; ++t) {
        idf[t] = doc_freq[t] > 0.0 ? std::log(n / doc_freq[t]) : 0.0;
    }
    return idf;
}

/// TF-IDF features using an externally supplied idf vector (used to carry
/// the training-split idf onto the test split).
inline TfIdfMatrix apply_tfidf(const CountMatrix& counts,
                               const RealVector& idf) {
    TEXTNMF_ASSERT(idf.size() == counts.n_terms,
                   "apply_tfidf: idf length must equal n_terms");
    TfIdfMatrix out;
    out.values = compute_tf(counts).array().colwise() * idf.array();
    out.vocabulary = counts.vocabulary;
    return out;
}

/// TF-IDF features with the idf computed from these counts themselves.
inline TfIdfMatrix compute_tfidf(const CountMatrix& counts) {
    return apply_tfidf(counts, compute_idf(counts));
}

/// Outcome of vocabulary pruning: pruned features plus the kept original
/// term ids, ascending (relative term order is preserved).
struct TermSelection {
    TfIdfMatrix matrix;
    std::vector<Index> kept;
};

/**
 * @brief Keeps the k terms with the largest maximum TF-IDF score across all
 * documents. Ties at the cutoff are broken toward the lower term id.
 */
inline TermSelection select_top_terms(const TfIdfMatrix& x, Index k) {
    TEXTNMF_ASSERT(k >= 1 && k <= x.n_terms(),
                   "select_top_terms: k must be in [1, n_terms]");
    RealVector row_max = x.values.rowwise().maxCoeff();
    std::vector<Index> order(static_cast<size_t>(x.n_terms()));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return row_max[a] != row_max[b] ? row_max[a] > row_max[b] : a < b;
    });
    order.resize(static_cast<size_t>(k));
    std::sort(order.begin(), order.end());

    TermSelection sel;
    sel.kept = std::move(order);
    sel.matrix.values.resize(k, x.n_docs());
    sel.matrix.vocabulary.reserve(static_cast<size_t>(k));
    for (Index i = 0; i < k; ++i) {
        const Index old = sel.kept[static_cast<size_t>(i)];
        sel.matrix.values.row(i) = x.values.row(old);
        sel.matrix.vocabulary.push_back(x.vocabulary[static_cast<size_t>(old)]);
    }
    return sel;
}

/// Applies a previously computed term selection to another feature matrix
/// over the same original vocabulary.
inline TfIdfMatrix apply_term_selection(const TfIdfMatrix& x,
                                        const std::vector<Index>& kept) {
    TfIdfMatrix out;
    out.values.resize(static_cast<Index>(kept.size()), x.n_docs());
    out.vocabulary.reserve(kept.size());
    for (size_t i = 0; i < kept.size(); ++i) {
        TEXTNMF_ASSERT(kept[i] >= 0 && kept[i] < x.n_terms(),
                       "apply_term_selection: kept id out of range");
        out.values.row(static_cast<Index>(i)) = x.values.row(kept[i]);
        out.vocabulary.push_back(x.vocabulary[static_cast<size_t>(kept[i])]);
    }
    return out;
}

/// Restriction of a corpus to the listed documents, renumbered by position.
/// The term axis is left untouched.
inline CountMatrix restrict_to_docs(const CountMatrix& counts,
                                    const std::vector<Index>& doc_ids) {
    TEXTNMF_ASSERT(!doc_ids.empty(), "restrict_to_docs: empty selection");
    std::vector<Index> new_id(static_cast<size_t>(counts.n_docs), Index{-1});
    for (size_t i = 0; i < doc_ids.size(); ++i) {
        const Index d = doc_ids[i];
        if (d < 0 || d >= counts.n_docs) {
            throw data_error("restrict_to_docs: doc id out of range");
        }
        if (new_id[static_cast<size_t>(d)] != -1) {
            throw data_error("restrict_to_docs: duplicate doc id in selection");
        }
        new_id[static_cast<size_t>(d)] = static_cast<Index>(i);
    }
    CountMatrix out;
    out.n_terms = counts.n_terms;
    out.n_docs = static_cast<Index>(doc_ids.size());
    out.vocabulary = counts.vocabulary;
    for (const CountEntry& e : counts.entries) {
        const Index nd = new_id[static_cast<size_t>(e.doc)];
        if (nd != -1) {
            out.entries.push_back({e.term, nd, e.count});
        }
    }
    out.validate();
    return out;
}

/// Label subset matching restrict_to_docs' renumbering.
inline LabelVector subset_labels(const LabelVector& labels,
                                 const std::vector<Index>& doc_ids) {
    LabelVector out;
    out.n_labels = labels.n_labels;
    out.ids.reserve(doc_ids.size());
    for (Index d : doc_ids) {
        if (d < 0 || d >= labels.n_docs()) {
            throw data_error("subset_labels: doc id out of range");
        }
        out.ids.push_back(labels.ids[static_cast<size_t>(d)]);
    }
    return out;
}

namespace details {

inline std::int64_t parse_int(std::string_view token, const std::string& where) {
    std::int64_t value = 0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw data_error(where + ": malformed integer '" + std::string(token) +
                         "'");
    }
    return value;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw data_error("cannot open " + path);
    }
    return in;
}

} // namespace details

/// Reads a vocabulary file: one term per line, line number = term id.
inline std::vector<std::string> load_vocabulary(const std::string& path) {
    std::ifstream in = details::open_input(path);
    std::vector<std::string> vocab;
    std::string line;
    while (std::getline(in, line)) {
        vocab.push_back(line);
    }
    if (vocab.empty()) {
        throw data_error("empty vocabulary file " + path);
    }
    return vocab;
}

/**
 * @brief Reads a count file (`doc_id<TAB>term_id<TAB>count` per line) plus
 * its vocabulary file, validating the result. The number of documents is
 * inferred as max doc id + 1.
 */
inline CountMatrix load_counts(const std::string& counts_path,
                               const std::string& vocab_path) {
    CountMatrix counts;
    counts.vocabulary = load_vocabulary(vocab_path);
    counts.n_terms = static_cast<Index>(counts.vocabulary.size());

    std::ifstream in = details::open_input(counts_path);
    std::string line;
    size_t line_no = 0;
    Index max_doc = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::string where = counts_path + ":" + std::to_string(line_no);
        const size_t t1 = line.find('\t');
        const size_t t2 = t1 == std::string::npos ? std::string::npos
                                                  : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw data_error(where + ": expected doc<TAB>term<TAB>count");
        }
        CountEntry e;
        e.doc = details::parse_int(std::string_view(line).substr(0, t1), where);
        e.term = details::parse_int(
            std::string_view(line).substr(t1 + 1, t2 - t1 - 1), where);
        e.count = details::parse_int(std::string_view(line).substr(t2 + 1), where);
        max_doc = std::max(max_doc, e.doc);
        counts.entries.push_back(e);
    }
    counts.n_docs = max_doc + 1;
    counts.validate();
    return counts;
}

/// Reads a label file (`doc_id<TAB>label_id` per line); every document in
/// [0, n_docs) must be labeled exactly once.
inline LabelVector load_labels(const std::string& path, Index n_docs) {
    std::ifstream in = details::open_input(path);
    LabelVector labels;
    labels.ids.assign(static_cast<size_t>(n_docs), -1);
    std::string line;
    size_t line_no = 0;
    int max_label = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::string where = path + ":" + std::to_string(line_no);
        const size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw data_error(where + ": expected doc_id<TAB>label_id");
        }
        const Index doc =
            details::parse_int(std::string_view(line).substr(0, tab), where);
        const int label = static_cast<int>(
            details::parse_int(std::string_view(line).substr(tab + 1), where));
        if (doc < 0 || doc >= n_docs) {
            throw data_error(where + ": doc id out of range");
        }
        if (labels.ids[static_cast<size_t>(doc)] != -1) {
            throw data_error(where + ": duplicate label for document " +
                             std::to_string(doc));
        }
        if (label < 0) {
            throw data_error(where + ": negative label id");
        }
        labels.ids[static_cast<size_t>(doc)] = label;
        max_label = std::max(max_label, label);
    }
    for (Index d = 0; d < n_docs; ++d) {
        if (labels.ids[static_cast<size_t>(d)] == -1) {
            throw data_error(path + ": document " + std::to_string(d) +
                             " has no label");
        }
    }
    labels.n_labels = max_label + 1;
    labels.validate();
    return labels;
}

/// Reads one doc id per line.
inline std::vector<Index> load_id_list(const std::string& path) {
    std::ifstream in = details::open_input(path);
    std::vector<Index> ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        ids.push_back(details::parse_int(
            line, path + ":" + std::to_string(line_no)));
    }
    if (ids.empty()) {
        throw data_error("empty id list " + path);
    }
    return ids;
}

/// Reads a split manifest (train file + test file); the two lists must be
/// disjoint and in range.
inline Split load_split(const std::string& train_path,
                        const std::string& test_path, Index n_docs) {
    Split split;
    split.train = load_id_list(train_path);
    split.test = load_id_list(test_path);
    std::vector<bool> seen(static_cast<size_t>(n_docs), false);
    for (const std::vector<Index>* part : {&split.train, &split.test}) {
        for (Index d : *part) {
            if (d < 0 || d >= n_docs) {
                throw data_error("split manifest: doc id out of range");
            }
            if (seen[static_cast<size_t>(d)]) {
                throw data_error("split manifest: doc " + std::to_string(d) +
                                 " listed twice");
            }
            seen[static_cast<size_t>(d)] = true;
        }
    }
    return split;
}

inline void write_counts(const CountMatrix& counts, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write " + path);
    }
    for (const CountEntry& e : counts.entries) {
        out << e.doc << '\t' << e.term << '\t' << e.count << '\n';
    }
}

inline void write_vocabulary(const std::vector<std::string>& vocab,
                             const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write " + path);
    }
    for (const std::string& term : vocab) {
        out << term << '\n';
    }
}

inline void write_labels(const LabelVector& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write " + path);
    }
    for (size_t d = 0; d < labels.ids.size(); ++d) {
        out << d << '\t' << labels.ids[d] << '\n';
    }
}

inline void write_id_list(const std::vector<Index>& ids,
                          const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write " + path);
    }
    for (Index id : ids) {
        out << id << '\n';
    }
}

} // namespace textnmf
