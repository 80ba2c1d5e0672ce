// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "wfsem/error.hpp"
#include "wfsem/relevance_filter.hpp"

using namespace wfsem;
using namespace wfsem::testing;

namespace {

const std::string kAln = "http://purl.obolibrary.org/obo/ALN_";

OntologyStore alignment_store() {
  OntologyStore s;
  s.load(read_fixture("ontologies/alignment_toy.obo"), OntologyFormat::OboFlat, "");
  s.freeze();
  return s;
}

WorkflowGraph meta(std::string title, std::string description, std::vector<std::string> tags) {
  WorkflowGraph w;
  w.id = "w";
  w.title = std::move(title);
  w.description = std::move(description);
  w.tags = std::move(tags);
  return w;
}

TermList curated() {
  return TermList({"workflows", "rna", "sequence analysis"}, {"workflows", "rna"}, {"biomoby", "blast", "ebi.ac.uk"});
}

}  // namespace

TEST(DefinitionSearch, WholeTokenWithSubclasses) {
  const auto s = alignment_store();
  EXPECT_EQ(definition_search(s, "topic", "alignment", true),
            (std::set<std::string>{kAln + "0002", kAln + "0003", kAln + "0004"}));
  EXPECT_EQ(definition_search(s, "topic", "alignment", false), std::set<std::string>{kAln + "0002"});
  EXPECT_TRUE(definition_search(s, "topic", "zebrafish", true).empty());
  EXPECT_EQ(definition_search(s, "operation", "alignment", true), std::set<std::string>{kAln + "0006"});
  EXPECT_EQ(labels_of(s, {kAln + "0002", kAln + "0003"}),
            (std::set<std::string>{"sequence comparison", "pairwise comparison"}));
}

TEST(DefinitionSearch, UnknownNamespace) {
  const auto s = alignment_store();
  try {
    definition_search(s, "data", "alignment", true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownNamespace);
  }
}

TEST(TermListTest, EffectiveListUnderEdits) {
  TermList t({"A", "b"}, {}, {});
  EXPECT_EQ(t.effective(), (std::set<std::string>{"a", "b"}));
  t.remove("B");
  t.add("  Gene   List ");
  EXPECT_EQ(t.effective(), (std::set<std::string>{"a", "gene list"}));
  Rng rng(3);
  const std::vector<std::string> words = {"alpha", "beta", "gamma", "delta"};
  for (int i = 0; i < 200; ++i) {
    const std::string w = pick(rng, words);
    switch (uniform(rng, 0, 2)) {
      case 0: t.add_base(w); break;
      case 1: t.add(w); break;
      default: t.remove(w); break;
    }
    std::set<std::string> expected;
    for (const auto& b : t.base_terms())
      if (!t.removed().count(b)) expected.insert(b);
    expected.insert(t.added().begin(), t.added().end());
    ASSERT_EQ(t.effective(), expected);
  }
}

TEST(TermListTest, TextRoundTrip) {
  const auto t = TermList::parse("# curated\n[base]\nAlpha\n\n[removed]\nworkflows\n[added]\nBioMoby\nebi.ac.uk\n");
  EXPECT_EQ(t.base_terms(), std::set<std::string>{"alpha"});
  EXPECT_EQ(t.removed(), std::set<std::string>{"workflows"});
  EXPECT_EQ(t.added(), (std::set<std::string>{"biomoby", "ebi.ac.uk"}));
  const auto again = TermList::parse(t.to_text());
  EXPECT_EQ(again.effective(), t.effective());
  EXPECT_EQ(again.removed(), t.removed());
  EXPECT_THROW(TermList::parse("orphan\n"), Error);
  EXPECT_THROW(TermList::parse("[extra]\nx\n"), Error);
}

TEST(ApplyFilter, TagOnlyMatch) {
  const auto v = apply_filter(meta("", "", {"BioMoby"}), curated());
  EXPECT_TRUE(v.relevant);
  EXPECT_EQ(v.matched_terms, std::set<std::string>{"biomoby"});
  EXPECT_EQ(v.matched_fields, std::set<MatchField>{MatchField::Tags});
}

TEST(ApplyFilter, RemovedTermsNoLongerMatch) {
  EXPECT_FALSE(apply_filter(meta("My workflow", "", {}), curated()).relevant);
  EXPECT_FALSE(apply_filter(meta("My workflows", "RNA folding", {}), curated()).relevant);
  EXPECT_FALSE(apply_filter(meta("", "", {}), curated()).relevant);
}

TEST(ApplyFilter, WholeTokensOnly) {
  const TermList t({}, {}, {"rna", "gene list", "ebi.ac.uk"});
  EXPECT_FALSE(apply_filter(meta("internal controls", "", {}), t).relevant);
  EXPECT_TRUE(apply_filter(meta("", "uses RNA-seq", {}), t).relevant);
  EXPECT_FALSE(apply_filter(meta("list gene", "", {}), t).relevant);
  const auto v = apply_filter(meta("Gene list", "from http://www.ebi.ac.uk/", {"gene", "list"}), t);
  EXPECT_EQ(v.matched_terms, (std::set<std::string>{"gene list", "ebi.ac.uk"}));
  EXPECT_EQ(v.matched_fields, (std::set<MatchField>{MatchField::Title, MatchField::Description}));
}

TEST(ApplyFilter, EmptyTermListRejected) {
  EXPECT_THROW(apply_filter(meta("x", "", {}), TermList()), Error);
}

TEST(ApplyFilter, MonotoneUnderAdditions) {
  Rng rng(77);
  const auto& words = word_pool();
  for (int i = 0; i < 200; ++i) {
    TermList t;
    t.add(pick(rng, words));
    std::string title;
    for (size_t k = 0, n = uniform(rng, 0, 6); k < n; ++k) title += pick(rng, words) + " ";
    const auto w = meta(title, "", {pick(rng, words)});
    auto before = apply_filter(w, t);
    EXPECT_EQ(before.relevant, !before.matched_terms.empty());
    t.add(pick(rng, words) + " " + pick(rng, words));
    const auto after = apply_filter(w, t);
    if (before.relevant) {
      EXPECT_TRUE(after.relevant);
    }
    for (const auto& m : before.matched_terms) EXPECT_TRUE(after.matched_terms.count(m));
  }
}

TEST(ApplyFilter, FieldOrderIndependent) {
  const TermList t({}, {}, {"blast", "fasta"});
  const auto a = apply_filter(meta("", "", {"fasta", "blast"}), t);
  const auto b = apply_filter(meta("", "", {"blast", "fasta"}), t);
  EXPECT_EQ(a.matched_terms, b.matched_terms);
  EXPECT_EQ(a.matched_fields, b.matched_fields);
}

TEST(ApplyFilter, VerdictCsv) {
  FilterVerdict v;
  v.workflow_id = "1189";
  v.relevant = true;
  v.matched_terms = {"blast", "protein"};
  FilterVerdict n;
  n.workflow_id = "9";
  const std::string csv = verdicts_csv({v, n});
  EXPECT_EQ(csv, "workflow_id,relevant,matched_terms\n1189,true,blast|protein\n9,false,\n");
}
