// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "wfsem/text.hpp"

using namespace wfsem;

TEST(Tokenize, SplitsOnPunctuationAndFolds) {
  EXPECT_EQ(tokenize("fastq-file"), (std::vector<std::string>{"fastq", "file"}));
  EXPECT_EQ(tokenize("ebi.ac.uk"), (std::vector<std::string>{"ebi", "ac", "uk"}));
  EXPECT_EQ(tokenize("  Sequence  ANALYSIS "), (std::vector<std::string>{"sequence", "analysis"}));
  EXPECT_EQ(tokenize("systems_biology"), (std::vector<std::string>{"systems", "biology"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("-- ,;").empty());
}

TEST(Tokenize, DigitsAndLettersAreUniform) {
  EXPECT_EQ(tokenize("GO:0008150 p53"), (std::vector<std::string>{"go", "0008150", "p53"}));
}

TEST(Tokenize, KeepsUtf8WordsWhole) {
  const auto t = tokenize("Protéine analyse");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], "prot\xc3\xa9ine");
}

TEST(TokenSequence, WholeTokenOnly) {
  EXPECT_FALSE(contains_token_sequence(tokenize("internal control"), tokenize("rna")));
  EXPECT_TRUE(contains_token_sequence(tokenize("RNA-seq reads"), tokenize("rna")));
  EXPECT_TRUE(contains_token_sequence(tokenize("a gene list here"), tokenize("Gene List")));
  EXPECT_FALSE(contains_token_sequence(tokenize("list gene"), tokenize("gene list")));
  EXPECT_FALSE(contains_token_sequence(tokenize("gene"), {}));
}

TEST(Text, NormalizeSpace) {
  EXPECT_EQ(normalize_space("  a \n\t b  c "), "a b c");
  EXPECT_EQ(normalize_space(""), "");
  EXPECT_EQ(trim(" x "), "x");
}

TEST(Text, SplitJoin) {
  EXPECT_EQ(split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(join({"a", "b", "c"}, "|"), "a|b|c");
  EXPECT_EQ(join({}, "|"), "");
}

TEST(Text, SanitizeUtf8ReplacesInvalidBytes) {
  EXPECT_EQ(sanitize_utf8("ok"), "ok");
  EXPECT_EQ(sanitize_utf8("a\xff" "b"), "a\xef\xbf\xbd" "b");
  EXPECT_EQ(sanitize_utf8("\xc3\xa9"), "\xc3\xa9");
  EXPECT_EQ(sanitize_utf8("\xc3"), "\xef\xbf\xbd");
}

TEST(Text, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
