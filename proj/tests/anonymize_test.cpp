#include <gtest/gtest.h>

#include <random>

#include "polar/augment/anonymize.hpp"
#include "test_util.hpp"

namespace polar::augment {
namespace {

TEST(Anonymize, TagsEmail) {
  EXPECT_EQ(anonymize("write to ana.b@example.org now"), "write to [EMAIL] now");
}

TEST(Anonymize, TagIsStable) { EXPECT_EQ(anonymize("[EMAIL] stays"), "[EMAIL] stays"); }

TEST(Anonymize, PhoneAndMention) {
  EXPECT_EQ(anonymize("call +421 903 123 456 or @jozo"), "call [PHONE] or [USER]");
}

struct Case {
  const char* input;
  const char* expected;
};

// Strings that must be tagged.
const Case kPositive[] = {
    {"ana.b@example.org", "[EMAIL]"},
    {"john_doe+tag@mail.co.uk", "[EMAIL]"},
    {"x@y.z", "[EMAIL]"},
    {"A.B-C%d@sub-domain.example.com", "[EMAIL]"},
    {"mail:ivan@почта.рф", "mail:[EMAIL]"},
    {"(me@host.io)", "([EMAIL])"},
    {"first@a.bc, second@d.ef", "[EMAIL], [EMAIL]"},
    {"<jan.novak@seznam.cz>", "<[EMAIL]>"},
    {"user123@domain123.org!", "[EMAIL]!"},
    {"ping me@x.io.", "ping [EMAIL]."},
    {"@jozo", "[USER]"},
    {"hi @maria_88!", "hi [USER]!"},
    {"RT @news: breaking", "RT [USER]: breaking"},
    {"(@ab)", "([USER])"},
    {"@Müller sagt", "[USER] sagt"},
    {"@Пётр привет", "[USER] привет"},
    {"@ab @cd", "[USER] [USER]"},
    {"@ab@cd", "[USER][USER]"},
    {"@user.name", "[USER].name"},
    {"cc:@x_y", "cc:[USER]"},
    {"+421 903 123 456", "[PHONE]"},
    {"0903123456", "[PHONE]"},
    {"call 555-123-4567 now", "call [PHONE] now"},
    {"(02) 1234 5678", "[PHONE]"},
    {"+1 (555) 123-4567", "[PHONE]"},
    {"tel. 123.456.7890", "tel. [PHONE]"},
    {"1234567", "[PHONE]"},
    {"+49-30-1234567", "[PHONE]"},
    {"numbers: 0044 20 7946 0958.", "numbers: [PHONE]."},
    {"12345678+1234567", "[PHONE][PHONE]"},
    {"reach @bob or bob@corp.com or 911 222 3333", "reach [USER] or [EMAIL] or [PHONE]"},
    {"@12345678", "[USER]"},
    {"foo@@bar.com", "foo@[USER].com"},
};

// Strings that must be left alone.
const char* const kNegative[] = {
    "no pii here",
    "[EMAIL] stays",
    "[USER] and [PHONE]",
    "@",
    "@a",
    "a @ b",
    "user@localhost",
    "email@",
    "@.com",
    "name@domain.",
    "word@x",
    "123456",
    "12 34 56",
    "year 2024 and 2025",
    "v1.2.3.4",
    "1-2-3",
    "abc1234567",
    "1234567abc",
    "price 1,000,000",
    "3.14159",
    "ISBN 978-3-16",
    "room 12-34",
    "#hashtag",
    "@ sign alone",
    "c@t",
    "e-mail: none",
    "phone: n/a",
    "你好世界",
    "ሰላም ለዓለም",
    "+",
    "++",
    "(12) 34",
};

TEST(AnonymizePatterns, PositiveSuite) {
  static_assert(std::size(kPositive) >= 30);
  for (const auto& c : kPositive) EXPECT_EQ(anonymize(c.input), c.expected) << c.input;
}

TEST(AnonymizePatterns, NegativeSuite) {
  static_assert(std::size(kNegative) >= 30);
  for (const char* s : kNegative) EXPECT_EQ(anonymize(s), s) << s;
}

TEST(Anonymize, IdempotentOnSuites) {
  for (const auto& c : kPositive) {
    const auto once = anonymize(c.input);
    EXPECT_EQ(anonymize(once), once) << c.input;
  }
}

// Random strings biased towards '@', digits and separators.
TEST(Anonymize, IdempotentOnRandomStrings) {
  std::mt19937_64 gen(77);
  static const std::vector<std::string> pieces{"@", "@ab", "x", "1", "23", " ", "-", ".", "(", ")", "+",
                                               "é", "ж", "ß", "_", "com", "[", "]", "9"};
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const int n = static_cast<int>(gen() % 16);
    for (int k = 0; k < n; ++k) s += pieces[gen() % pieces.size()];
    const auto once = anonymize(s);
    ASSERT_EQ(anonymize(once), once) << s;
  }
}

TEST(Anonymize, LeavesOtherCharactersUnchanged) {
  EXPECT_EQ(anonymize(""), "");
  EXPECT_EQ(anonymize("Kurz: @ab, fin."), "Kurz: [USER], fin.");
  EXPECT_EQ(anonymize("tab\there @ab\n"), "tab\there [USER]\n");
}

}  // namespace
}  // namespace polar::augment
