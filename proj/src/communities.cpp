#include "discotrace/communities.hpp"

#include <algorithm>
#include <cctype>

namespace discotrace {

namespace {

constexpr const char* kAskHistoriansGuidelines =
    R"(Answers in r/AskHistorians are held to a higher standard than is generally found on Reddit. Answers should be in-depth, comprehensive, accurate, and based off of good quality sources. Answers should be in line with the existing historiography on the topic, and written in a manner respecting the Historical Method.

Write an in-depth answer. An in-depth answer provides the necessary context and complexity that the given topic calls for, going beyond a simple cursory overview. "Good answers aren't good just because they are right -- they are good because they explain." Your answer should give context to the events being discussed, not simply list related facts. Ask yourself: Do I have the expertise needed to answer this question? Have I done research on this topic? Can I cite academic quality primary and secondary sources? Can I answer follow-up questions?

Sources. Answers should reflect current academic understanding or debates on the subject. Both primary and secondary sources are accepted. Secondary literature should be from academic or respected general publishers. Tertiary sources such as Wikipedia may be cited for basic undisputed facts, but sole reliance on tertiary sources is not allowed. Blog posts and random web articles are not acceptable. You are not a source: personal experience and anecdotes are not acceptable.

No personal anecdotes. Personal anecdotes are unreliable, unverifiable, and of very little real interest.

No speculation. Suppositions and personal opinions are not a suitable basis for an answer. Warning phrases include "I guess," "I believe," "I think," "to my understanding," and "it makes sense to me that."

No partial answers or placeholders. An answer should be full and complete in and of itself. Do not post partial answers with the intention of prompting further discussion or as a placeholder to expand on later.

No political agendas or moralising. Answers should represent a sincere effort to make an argument from the historical record, constructed in keeping with the principles of the historical method. Evidence should not be chosen selectively to support a predetermined argument.

Do not just post links or quotations. A good answer is a balanced mix of context, explanation, and sources. Always provide context for any source you cite. Answers should not consist only or primarily of copy-pasted text.

No plagiarism. Directly copying and pasting another person's words and passing them off as your own will result in an instant ban.)";

constexpr const char* kScienceBasedParentingGuidelines =
    R"(Be respectful. Discussions and debates are welcome but must remain civilized. Inflammatory content is prohibited.

Read linked material before commenting. Make sure you know what you are commenting on to avoid misunderstandings.

Respect post flair. All top-level comments must adhere to the flair type guidelines set by the OP. If you reply to a top-level comment with additional or conflicting information, a link to flair-appropriate material is also required.

Sources must match flair type. For "Question -- Link To Research Required" flair, top-level answers must link directly to peer-reviewed research published in scientific journals. For "Question -- Link to Expert Consensus Required" flair, links to sources containing expert consensus are permitted (e.g. CDC, WHO, American Academy of Pediatrics). Parenting books, podcasts, and blogs are not peer-reviewed and should not be referenced as scientific sources.

No individualized medical advice. General questions are allowed; specific questions about one's own child's symptoms or treatment are not. Nothing posted constitutes medical advice.

Keep comments relevant. All threads and comments must be directly relevant to the discussion. Off-topic threads and comments will be removed.

No self-promotion or product promotion. Do not use this subreddit to advertise or sell a product, service, podcast, or book.

General discussion. Questions that cannot be answered by direct research or expert consensus, or requests for anecdotes and parent-to-parent advice, belong in the weekly General Discussion Megathread.)";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

const std::vector<CommunityProfile>& builtin_communities() {
  static const std::vector<CommunityProfile> profiles = {
      {"AskHistorians",
       "Users ask questions about history and receive detailed answers from knowledgeable "
       "historians.",
       kAskHistoriansGuidelines, 5, 12},
      {"NoStupidQuestions",
       "Users casually ask questions about general knowledge or any topic and receive answers.",
       "", 5, 18},
      {"AskEconomics",
       "Users ask questions about economic theory, research, and policy and receive answers "
       "grounded in economic theory and empirical research.",
       "", 5, 30},
      {"asklinguistics",
       "Users ask questions about linguistics and receive answers from knowledgeable linguists.",
       "", 5, 15},
      {"history", "Users discuss historical topics.", "", 5, 12},
      {"OutOfTheLoop",
       "Users ask questions about current events, pop culture, or internet trends they feel out "
       "of the loop on and receive answers.",
       "", 5, 12},
      {"ScienceBasedParenting",
       "Users ask questions about parenting and discuss research and science-based guidance.",
       kScienceBasedParentingGuidelines, 4, 20},
      {"beyondthebump",
       "Users discuss pregnancy, childbirth, and early parenting experiences.", "", 5, 12},
      {"explainlikeimfive",
       "Users ask questions about any topic and receive answers that simplify complex concepts "
       "in a way that is accessible for laypeople.",
       "", 5, 15},
  };
  return profiles;
}

std::optional<CommunityProfile> find_community(std::string_view name) {
  if (name.size() > 2 && (name.substr(0, 2) == "r/" || name.substr(0, 2) == "R/")) {
    name.remove_prefix(2);
  }
  const auto key = lower(name);
  for (const auto& profile : builtin_communities()) {
    if (lower(profile.name) == key) return profile;
  }
  return std::nullopt;
}

}  // namespace discotrace
