#!/usr/bin/env python3
"""Freeze the sentiment-scoring reference fixture.

This script contains an independent oracle: a structurally verbatim port of
the published VADER 3.3.2 reference implementation (Hutto & Gilbert 2014),
with the original English modifier/negation word lists hardcoded below.  The
pip package is not available on the build mirror, so the port below stands in
for it; it deliberately keeps the reference code structure (SentiText,
sentiment_valence, _but_check with its pop/insert list surgery, ...) rather
than the restructured production code in ``fedsent.sentilex``.

It scores 200 authored sentences covering every rule family, cross-checks the
production engine against the oracle, and freezes the oracle's outputs to
``tests/fixtures/vader_reference_fixture.jsonl``.  The fixture stores
unrounded floats (the reference's 4-decimal rounding is presentation only).

Run from the repository root:

    python3 scripts/make_reference_fixture.py
"""

import math
import string
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from fedsent import manifest, sentilex  # noqa: E402

# ---------------------------------------------------------------------------
# Oracle: verbatim-structure port of the reference implementation.
# ---------------------------------------------------------------------------

B_INCR = 0.293
B_DECR = -0.293
C_INCR = 0.733
N_SCALAR = -0.74

NEGATE = \
    ["aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
     "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
     "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
     "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
     "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing", "nowhere",
     "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
     "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
     "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite"]

BOOSTER_DICT = \
    {"absolutely": B_INCR, "amazingly": B_INCR, "awfully": B_INCR,
     "completely": B_INCR, "considerable": B_INCR, "considerably": B_INCR,
     "decidedly": B_INCR, "deeply": B_INCR, "effing": B_INCR, "enormous": B_INCR,
     "enormously": B_INCR, "entirely": B_INCR, "especially": B_INCR,
     "exceptional": B_INCR, "exceptionally": B_INCR, "extreme": B_INCR,
     "extremely": B_INCR, "fabulously": B_INCR, "flipping": B_INCR,
     "flippin": B_INCR, "fricking": B_INCR, "frickin": B_INCR,
     "frigging": B_INCR, "friggin": B_INCR, "fully": B_INCR,
     "greatly": B_INCR, "hella": B_INCR, "highly": B_INCR, "hugely": B_INCR,
     "incredible": B_INCR, "incredibly": B_INCR, "intensely": B_INCR,
     "major": B_INCR, "majorly": B_INCR, "more": B_INCR, "most": B_INCR,
     "particularly": B_INCR, "purely": B_INCR, "quite": B_INCR,
     "really": B_INCR, "remarkably": B_INCR, "so": B_INCR,
     "substantially": B_INCR, "thoroughly": B_INCR, "total": B_INCR,
     "totally": B_INCR, "tremendous": B_INCR, "tremendously": B_INCR,
     "uber": B_INCR, "unbelievably": B_INCR, "unusually": B_INCR,
     "utter": B_INCR, "utterly": B_INCR, "very": B_INCR,
     "almost": B_DECR, "barely": B_DECR, "hardly": B_DECR, "just enough": B_DECR,
     "kind of": B_DECR, "kinda": B_DECR, "kindof": B_DECR, "kind-of": B_DECR,
     "less": B_DECR, "little": B_DECR, "marginal": B_DECR, "marginally": B_DECR,
     "occasional": B_DECR, "occasionally": B_DECR, "partly": B_DECR,
     "scarce": B_DECR, "scarcely": B_DECR, "slight": B_DECR, "slightly": B_DECR,
     "somewhat": B_DECR, "sort of": B_DECR, "sorta": B_DECR, "sortof": B_DECR,
     "sort-of": B_DECR}

SPECIAL_CASE_IDIOMS = {"the shit": 3, "the bomb": 3, "bad ass": 1.5, "badass": 1.5,
                       "yeah right": -2, "kiss of death": -1.5, "to die for": 3}


def negated(input_words, include_nt=True):
    input_words = [str(w).lower() for w in input_words]
    neg_words = []
    neg_words.extend(NEGATE)
    for word in neg_words:
        if word in input_words:
            return True
    if include_nt:
        for word in input_words:
            if "n't" in word:
                return True
    return False


def normalize(score, alpha=15):
    norm_score = score / math.sqrt((score * score) + alpha)
    if norm_score < -1.0:
        return -1.0
    elif norm_score > 1.0:
        return 1.0
    else:
        return norm_score


def allcap_differential(words):
    is_different = False
    allcap_words = 0
    for word in words:
        if word.isupper():
            allcap_words += 1
    cap_differential = len(words) - allcap_words
    if 0 < cap_differential < len(words):
        is_different = True
    return is_different


def scalar_inc_dec(word, valence, is_cap_diff):
    scalar = 0.0
    word_lower = word.lower()
    if word_lower in BOOSTER_DICT:
        scalar = BOOSTER_DICT[word_lower]
        if valence < 0:
            scalar *= -1
        if word.isupper() and is_cap_diff:
            if valence > 0:
                scalar += C_INCR
            else:
                scalar -= C_INCR
    return scalar


class SentiText(object):
    def __init__(self, text):
        if not isinstance(text, str):
            text = str(text).encode("utf-8")
        self.text = text
        self.words_and_emoticons = self._words_and_emoticons()
        self.is_cap_diff = allcap_differential(self.words_and_emoticons)

    @staticmethod
    def _strip_punc_if_word(token):
        stripped = token.strip(string.punctuation)
        if len(stripped) <= 2:
            return token
        return stripped

    def _words_and_emoticons(self):
        wes = self.text.split()
        stripped = list(map(self._strip_punc_if_word, wes))
        return stripped


class SentimentIntensityAnalyzer(object):
    def __init__(self, lexicon, emojis):
        self.lexicon = dict(lexicon)
        self.emojis = dict(emojis)

    def polarity_scores(self, text):
        text_no_emoji = ""
        prev_space = True
        for chr_ in text:
            if chr_ in self.emojis:
                description = self.emojis[chr_]
                if not prev_space:
                    text_no_emoji += " "
                text_no_emoji += description
                prev_space = False
            else:
                text_no_emoji += chr_
                prev_space = chr_ == " "
        text = text_no_emoji.strip()

        sentitext = SentiText(text)

        sentiments = []
        words_and_emoticons = sentitext.words_and_emoticons
        for i, item in enumerate(words_and_emoticons):
            valence = 0
            if item.lower() in BOOSTER_DICT:
                sentiments.append(valence)
                continue
            if (i < len(words_and_emoticons) - 1 and item.lower() == "kind" and
                    words_and_emoticons[i + 1].lower() == "of"):
                sentiments.append(valence)
                continue

            sentiments = self.sentiment_valence(valence, sentitext, item, i, sentiments)

        sentiments = self._but_check(words_and_emoticons, sentiments)

        valence_dict = self.score_valence(sentiments, text)

        return valence_dict

    def sentiment_valence(self, valence, sentitext, item, i, sentiments):
        is_cap_diff = sentitext.is_cap_diff
        words_and_emoticons = sentitext.words_and_emoticons
        item_lowercase = item.lower()
        if item_lowercase in self.lexicon:
            valence = self.lexicon[item_lowercase]

            if item_lowercase == "no" and i != len(words_and_emoticons) - 1 and \
                    words_and_emoticons[i + 1].lower() in self.lexicon:
                valence = 0.0
            if (i > 0 and words_and_emoticons[i - 1].lower() == "no") \
                    or (i > 1 and words_and_emoticons[i - 2].lower() == "no") \
                    or (i > 2 and words_and_emoticons[i - 3].lower() == "no" and
                        words_and_emoticons[i - 1].lower() in ["or", "nor"]):
                valence = self.lexicon[item_lowercase] * N_SCALAR

            if item.isupper() and is_cap_diff:
                if valence > 0:
                    valence += C_INCR
                else:
                    valence -= C_INCR

            for start_i in range(0, 3):
                if i > start_i and words_and_emoticons[i - (start_i + 1)].lower() not in self.lexicon:
                    s = scalar_inc_dec(words_and_emoticons[i - (start_i + 1)], valence, is_cap_diff)
                    if start_i == 1 and s != 0:
                        s = s * 0.95
                    if start_i == 2 and s != 0:
                        s = s * 0.9
                    valence = valence + s
                    valence = self._negation_check(valence, words_and_emoticons, start_i, i)
                    if start_i == 2:
                        valence = self._special_idioms_check(valence, words_and_emoticons, i)

            valence = self._least_check(valence, words_and_emoticons, i)
        sentiments.append(valence)
        return sentiments

    def _least_check(self, valence, words_and_emoticons, i):
        if i > 1 and words_and_emoticons[i - 1].lower() not in self.lexicon \
                and words_and_emoticons[i - 1].lower() == "least":
            if words_and_emoticons[i - 2].lower() != "at" and words_and_emoticons[i - 2].lower() != "very":
                valence = valence * N_SCALAR
        elif i > 0 and words_and_emoticons[i - 1].lower() not in self.lexicon \
                and words_and_emoticons[i - 1].lower() == "least":
            valence = valence * N_SCALAR
        return valence

    @staticmethod
    def _but_check(words_and_emoticons, sentiments):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        if "but" in words_and_emoticons_lower:
            bi = words_and_emoticons_lower.index("but")
            for sentiment in sentiments:
                si = sentiments.index(sentiment)
                if si < bi:
                    sentiments.pop(si)
                    sentiments.insert(si, sentiment * 0.5)
                elif si > bi:
                    sentiments.pop(si)
                    sentiments.insert(si, sentiment * 1.5)
        return sentiments

    @staticmethod
    def _special_idioms_check(valence, words_and_emoticons, i):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        onezero = "{0} {1}".format(words_and_emoticons_lower[i - 1], words_and_emoticons_lower[i])
        twoonezero = "{0} {1} {2}".format(words_and_emoticons_lower[i - 2],
                                          words_and_emoticons_lower[i - 1], words_and_emoticons_lower[i])
        twoone = "{0} {1}".format(words_and_emoticons_lower[i - 2], words_and_emoticons_lower[i - 1])
        threetwoone = "{0} {1} {2}".format(words_and_emoticons_lower[i - 3],
                                           words_and_emoticons_lower[i - 2], words_and_emoticons_lower[i - 1])
        threetwo = "{0} {1}".format(words_and_emoticons_lower[i - 3], words_and_emoticons_lower[i - 2])

        sequences = [onezero, twoonezero, twoone, threetwoone, threetwo]

        for seq in sequences:
            if seq in SPECIAL_CASE_IDIOMS:
                valence = SPECIAL_CASE_IDIOMS[seq]
                break

        if len(words_and_emoticons_lower) - 1 > i:
            zeroone = "{0} {1}".format(words_and_emoticons_lower[i], words_and_emoticons_lower[i + 1])
            if zeroone in SPECIAL_CASE_IDIOMS:
                valence = SPECIAL_CASE_IDIOMS[zeroone]
        if len(words_and_emoticons_lower) - 1 > i + 1:
            zeroonetwo = "{0} {1} {2}".format(words_and_emoticons_lower[i], words_and_emoticons_lower[i + 1],
                                              words_and_emoticons_lower[i + 2])
            if zeroonetwo in SPECIAL_CASE_IDIOMS:
                valence = SPECIAL_CASE_IDIOMS[zeroonetwo]

        n_grams = [threetwoone, threetwo, twoone]
        for n_gram in n_grams:
            if n_gram in BOOSTER_DICT:
                valence = valence + BOOSTER_DICT[n_gram]
        return valence

    @staticmethod
    def _negation_check(valence, words_and_emoticons, start_i, i):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        if start_i == 0:
            if negated([words_and_emoticons_lower[i - (start_i + 1)]]):
                valence = valence * N_SCALAR
        if start_i == 1:
            if words_and_emoticons_lower[i - 2] == "never" and \
                    (words_and_emoticons_lower[i - 1] == "so" or
                     words_and_emoticons_lower[i - 1] == "this"):
                valence = valence * 1.25
            elif words_and_emoticons_lower[i - 2] == "without" and \
                    words_and_emoticons_lower[i - 1] == "doubt":
                valence = valence
            elif negated([words_and_emoticons_lower[i - (start_i + 1)]]):
                valence = valence * N_SCALAR
        if start_i == 2:
            if words_and_emoticons_lower[i - 3] == "never" and \
                    (words_and_emoticons_lower[i - 2] == "so" or words_and_emoticons_lower[i - 2] == "this") or \
                    (words_and_emoticons_lower[i - 1] == "so" or words_and_emoticons_lower[i - 1] == "this"):
                valence = valence * 1.25
            elif words_and_emoticons_lower[i - 3] == "without" and \
                    (words_and_emoticons_lower[i - 2] == "doubt" or words_and_emoticons_lower[i - 1] == "doubt"):
                valence = valence
            elif negated([words_and_emoticons_lower[i - (start_i + 1)]]):
                valence = valence * N_SCALAR
        return valence

    def _punctuation_emphasis(self, text):
        ep_amplifier = self._amplify_ep(text)
        qm_amplifier = self._amplify_qm(text)
        punct_emph_amplifier = ep_amplifier + qm_amplifier
        return punct_emph_amplifier

    @staticmethod
    def _amplify_ep(text):
        ep_count = text.count("!")
        if ep_count > 4:
            ep_count = 4
        ep_amplifier = ep_count * 0.292
        return ep_amplifier

    @staticmethod
    def _amplify_qm(text):
        qm_count = text.count("?")
        qm_amplifier = 0
        if qm_count > 1:
            if qm_count <= 3:
                qm_amplifier = qm_count * 0.18
            else:
                qm_amplifier = 0.96
        return qm_amplifier

    @staticmethod
    def _sift_sentiment_scores(sentiments):
        pos_sum = 0.0
        neg_sum = 0.0
        neu_count = 0
        for sentiment_score in sentiments:
            if sentiment_score > 0:
                pos_sum += (float(sentiment_score) + 1)
            if sentiment_score < 0:
                neg_sum += (float(sentiment_score) - 1)
            if sentiment_score == 0:
                neu_count += 1
        return pos_sum, neg_sum, neu_count

    def score_valence(self, sentiments, text):
        if sentiments:
            sum_s = float(sum(sentiments))
            punct_emph_amplifier = self._punctuation_emphasis(text)
            if sum_s > 0:
                sum_s += punct_emph_amplifier
            elif sum_s < 0:
                sum_s -= punct_emph_amplifier

            compound = normalize(sum_s)
            pos_sum, neg_sum, neu_count = self._sift_sentiment_scores(sentiments)

            if pos_sum > math.fabs(neg_sum):
                pos_sum += punct_emph_amplifier
            elif pos_sum < math.fabs(neg_sum):
                neg_sum -= punct_emph_amplifier

            total = pos_sum + math.fabs(neg_sum) + neu_count
            pos = math.fabs(pos_sum / total)
            neg = math.fabs(neg_sum / total)
            neu = math.fabs(neu_count / total)
        else:
            compound = 0.0
            pos = 0.0
            neg = 0.0
            neu = 0.0

        # NOTE: the reference rounds here for display; we keep full precision.
        sentiment_dict = \
            {"neg": neg,
             "neu": neu,
             "pos": pos,
             "compound": compound}

        return sentiment_dict


# ---------------------------------------------------------------------------
# Fixture corpus: 200 authored sentences spanning every rule family.
# ---------------------------------------------------------------------------

SENTENCES = [
    # -- plain positive -----------------------------------------------------
    "The ceasefire agreement is good news for the region.",
    "The peace talks made real progress this week.",
    "What a brave and honest speech by the ambassador.",
    "The volunteers did an excellent job helping the refugees.",
    "I admire the courage of these reporters.",
    "The new treaty brings hope to millions.",
    "Such a wonderful gesture of unity between the two nations.",
    "The aid convoy arrived safely and the people are grateful.",
    "This is a great victory for diplomacy.",
    "A wise decision that deserves praise.",
    "People celebrate the freedom they fought for.",
    "The rescue team showed outstanding bravery.",
    "Strong leadership and calm heads prevailed.",
    "The humanitarian corridor is a blessing for the wounded.",
    # -- plain negative -----------------------------------------------------
    "The shelling caused terrible damage to the old town.",
    "This war is a catastrophe for both countries.",
    "The refugees suffer hunger and fear every day.",
    "Such a cruel and senseless attack on civilians.",
    "The economy is in crisis and poverty is spreading.",
    "The blockade brings misery to the whole coast.",
    "Corruption has ruined the reconstruction effort.",
    "A shameful betrayal of the peace process.",
    "The report describes horrific crimes against prisoners.",
    "Their propaganda spreads hatred and fear.",
    "The city lies in ruins after the bombing.",
    "Another tragic loss for the families of the victims.",
    "The talks collapsed in anger and distrust.",
    "This scandal is a disgrace for the ministry.",
    "The regime answered the protest with violence.",
    # -- neutral: no lexicon tokens ----------------------------------------
    "The council will meet on Tuesday to discuss the border report.",
    "The minister arrived in the capital this morning.",
    "Observers counted twelve convoys on the northern road.",
    "The committee published its quarterly statement yesterday.",
    "Delegates from forty countries attended the session.",
    "The spokesman read the communique to the assembled press.",
    "The census figures will be released next month.",
    "Officials signed the customs paperwork at noon.",
    "The pipeline runs through three provinces.",
    "Parliament reconvenes after the winter recess.",
    "The exchange rate held steady through the afternoon.",
    "Correspondents filed their stories before the deadline.",
    "The survey covered two hundred households per district.",
    "Maps of the demarcation line were distributed to both sides.",
    # -- boosters at distance one ------------------------------------------
    "The mediation effort was very good.",
    "The outcome is really important and truly good for trade.",
    "The situation is extremely dangerous near the front line.",
    "The evidence is absolutely shocking.",
    "Their response was incredibly generous.",
    "The bridge repair crew was remarkably brave.",
    "The airstrike was utterly devastating.",
    "The negotiators are quite confident about the draft.",
    "The minister gave a thoroughly honest account.",
    "The villagers were deeply grateful for the supplies.",
    # -- dampeners at distance one ------------------------------------------
    "The compromise text is slightly better than the last draft.",
    "The shelter is barely safe for the children.",
    "The new checkpoint plan seems kind of weak.",
    "The official explanation was sort of wrong.",
    "The campaign was hardly a success.",
    "The response from the capital was somewhat disappointing.",
    "Conditions in the camp are marginally better this winter.",
    "The envoy sounded less hopeful than before.",
    "The turnout was a little disappointing for the organizers.",
    "The arrangement is almost fair to the smaller states.",
    # -- boosters at distance two and three (damping) ------------------------
    "The plan is very clearly good for the border towns.",
    "It was really a very good outcome for the talks.",
    "The response has been so unbelievably good this time.",
    "The damage was extremely widely bad across the province.",
    "The truce is very much a good step forward.",
    "The offer was really rather surprisingly generous.",
    "The decision is so very clearly wrong.",
    "The report was quite simply devastating for the ministry.",
    "Morale is very low but really quite strong in the north.",
    "The outcome was so utterly completely bad for the coalition.",
    # -- ALL-CAPS emphasis ---------------------------------------------------
    "This policy is a DISASTER for everyone involved.",
    "A GREAT victory for the people of the valley.",
    "The committee called the leak a SCANDAL of the first order.",
    "Their so-called plan is ABSOLUTELY hopeless.",
    "The crew did an AMAZING job under fire.",
    "STOP this senseless WAR now.",
    "The verdict was WRONG and everyone knows it.",
    "What a BRILLIANT move by the mediators.",
    "The camp is UNSAFE for the volunteers.",
    "They deserve RESPECT for that rescue.",
    # -- negations: not / never / without / no ------------------------------
    "The offer is not good enough for the northern districts.",
    "The envoy is not happy with the wording.",
    "The outcome was not bad considering the pressure.",
    "They never agreed to the annex in the first place.",
    "The council never trusted the interim committee.",
    "The region will see no peace under this plan.",
    "There is no hope left in the ruined quarter.",
    "No help or support reached the stranded villagers.",
    "No food or comfort arrived before the storm.",
    "The clause passed without support from the eastern bloc.",
    "The convoy moved without warning through the pass.",
    "The annex was approved, nothing good will come of it.",
    "Nobody called it fair, nothing about the deal was fair.",
    "The garrison did not panic during the blackout.",
    "The audit found nothing wrong with the escrow account.",
    # -- contractions as negations -------------------------------------------
    "The ministry isn't honest about the casualty figures.",
    "They don't trust the monitors from either side.",
    "The general wasn't happy about the leaked memo.",
    "The coalition couldn't protect the corridor.",
    "We haven't lost hope for the stranded crews.",
    "The mission didn't fail because of the weather.",
    "The mayor doesn't support the curfew extension.",
    "It wasn't a fair hearing by any measure.",
    # -- "never so / never this" intensifier ---------------------------------
    "The border crossings have never been so good.",
    "Relations between the two camps were never this bad.",
    "The supply line has never been so safe as this month.",
    "Coverage of the talks has never been this fair.",
    # -- "without doubt" passthrough -----------------------------------------
    "Without doubt a brilliant piece of diplomacy.",
    "The evacuation was without doubt a success.",
    "This is without doubt the worst drought in decades.",
    # -- "least" negation and "at least" exemption ---------------------------
    "That was the least successful summit in a decade.",
    "It was the least honest answer the panel heard.",
    "At least the field hospital is safe from the flooding.",
    "At least the harvest was good this autumn.",
    # -- contrastive "but" ----------------------------------------------------
    "The speech was good but the policy behind it is terrible.",
    "The army won the hill but lost the valley and the trust of the town.",
    "The numbers look bad but the trend is hopeful.",
    "The mediator is smart but the mandate is weak.",
    "The deal sounded fair but the annex hides an ugly clause.",
    "The harvest failed but the aid network is strong.",
    "Losses were heavy but the line held and morale is good.",
    "The bridge fell but the engineers stayed calm.",
    "The ruling was unfair but the appeal gives hope.",
    "The storm hurt the camp but the response was excellent.",
    # -- special-case idioms ---------------------------------------------------
    "That new field radio is the bomb according to the operators.",
    "Their logistics corps is the shit, say the liaison officers.",
    "The sergeant is one bad ass negotiator when the trucks stall.",
    "The pilot pulled a badass maneuver over the ridge.",
    "Yeah right, like the committee will ever publish the annex.",
    "Backing that faction was the kiss of death for the coalition.",
    "The field kitchen makes a stew to die for, the drivers say.",
    # -- punctuation emphasis --------------------------------------------------
    "The evacuation was a success!",
    "The evacuation was a success!!",
    "The evacuation was a success!!!!!",
    "The audit was a disaster!",
    "The audit was a disaster!!!",
    "Why would the council hide a report this good??",
    "Why would the council bury a report this bad???",
    "How is this fair????",
    "The truce is holding?? Good news at last.",
    "They shelled the hospital again!! A war crime in plain sight!",
    # -- emoticons and emoji ----------------------------------------------------
    "Finally some good news from the border :)",
    "The museum survived the fire :D what a relief.",
    "Another checkpoint closed today :( the queue is endless.",
    "Sending strength to the night shift <3 they are heroes.",
    "The aid flight landed 😀 and the crowd cheered.",
    "The orphanage lost its roof 😢 donations are welcome.",
    "The armistice holds 🙂 cautious optimism in the capital.",
    "Negotiators storm out again 😠 talks are a mess.",
    # -- "kind" vs "kind of" -----------------------------------------------------
    "The nurses were kind to the wounded prisoners.",
    "The interim report was kind of weak on verification.",
    "A kind gesture from the opposing trench on the holiday.",
    # -- tricky "no" forms --------------------------------------------------------
    "The guards said no good would come of the transfer.",
    "The answer from the junta was no.",
    "The answer is no!",
    "No, the tribunal will not reopen the case.",
    "There is no trust between the delegations.",
    # -- longer mixed comments ----------------------------------------------------
    "The sanctions destroyed the export economy but the people remain hopeful and strong.",
    "After the massacre the town buried its dead, yet the survivors speak of forgiveness and peace.",
    "The general praised the brave defenders while the opposition mourned the terrible losses.",
    "Foreign aid saved the harvest, and the farmers thank the volunteers for their kindness.",
    "The armistice is fragile, the roads are dangerous, and the winter will be cruel.",
    "Observers fear the ceasefire will fail because neither side trusts the monitors.",
    "The tribunal's verdict brought relief to the victims and shame to the perpetrators.",
    "Despite the blockade, the clinic kept working, a small victory for common decency.",
    "The president called the coup attempt a betrayal and promised justice for the fallen.",
    "Markets recovered quickly, a welcome sign of stability after the chaotic spring.",
    "The documentary shows the horror of the siege and the quiet heroism of the medics.",
    "Commanders deny the atrocity reports, but the evidence of the crime keeps growing.",
    "The famine eased this year, thanks to the grain corridor and some lucky weather.",
    "Veterans describe the battle as a pointless waste, a defeat dressed up as a victory.",
    "The new governor inherits a corrupt administration, an angry public, and an empty treasury.",
    # -- neutral chatter with light sentiment -------------------------------------
    "The briefing mentioned the new radar twice, which analysts found interesting.",
    "The press corps liked the shorter format of the evening briefing.",
    "Commuters worry about the fuel ration announced for next week.",
    "The panel agreed to publish the annex after the recess.",
    "Residents hope the water main will be fixed before the frost.",
    "The attaché declined to comment on the leaked cable.",
    "Two of the observers missed the convoy because of the road closure.",
    "The harvest festival went ahead despite the curfew.",
    "Engineers inspected the dam and found no damage after the tremor.",
    # -- boosted negations and double modifiers ------------------------------------
    "The draft is not very good, according to the legal team.",
    "The corridor is not really safe after dark.",
    "The plan was never particularly fair to the islanders.",
    "The budget is not entirely honest about the arrears.",
    "The patrol was not so lucky on the second night.",
    "The mood in the bunker was not exactly happy.",
    "The offer is not remotely fair to the miners.",
    "The spokesman was not completely wrong about the timeline.",
    # -- ALL-CAPS boosters and shouted sentiment ------------------------------------
    "The relief effort was VERY good this quarter.",
    "The blackout made the tunnels EXTREMELY dangerous.",
    "The recruits were SO proud after the review.",
    "A TRULY great day for the port city.",
    # -- emphatic mixtures ------------------------------------------------------------
    "VICTORY at last!! The siege is over and the bells are ringing!",
    "Total failure??? The inquiry says the warnings were ignored!!",
    "The armistice is GOOD news, really good news!",
    "Betrayed AGAIN by the same corrupt clique!!!",
]


def production_scores(text, lex, emoji_map):
    """Score ``text`` with the production engine (emoji path included)."""
    for symbol in sorted(emoji_map, key=len, reverse=True):
        if symbol in text:
            text = text.replace(symbol, f" {emoji_map[symbol]} ")
    return sentilex.compound_score(text, lex)


def main():
    lex = sentilex.load_lexicon()
    emoji_map = {}
    emoji_path = REPO_ROOT / "src" / "fedsent" / "assets" / "emoji_map.tsv"
    for line in emoji_path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            symbol, description = line.split("\t")
            emoji_map[symbol] = description

    # Guard against drift between the hardcoded reference word lists and the
    # bundled assets the production engine loads.
    assert dict(lex.boosters) == BOOSTER_DICT, "booster asset drifted from the reference list"
    assert set(lex.negations) == set(NEGATE), "negation asset drifted from the reference list"
    assert sentilex.SPECIAL_CASE_IDIOMS == {k: float(v) for k, v in SPECIAL_CASE_IDIOMS.items()}

    analyzer = SentimentIntensityAnalyzer(lex.entries, emoji_map)

    if len(SENTENCES) != 200:
        raise SystemExit(f"fixture corpus must have exactly 200 sentences, found {len(SENTENCES)}")
    if len(set(SENTENCES)) != len(SENTENCES):
        raise SystemExit("fixture corpus contains duplicate sentences")

    records = []
    worst = 0.0
    mismatches = []
    for idx, text in enumerate(SENTENCES, 1):
        ref = analyzer.polarity_scores(text)
        ours = production_scores(text, lex, emoji_map)
        diff = max(
            abs(ref["compound"] - ours.compound),
            abs(ref["pos"] - ours.pos_share),
            abs(ref["neg"] - ours.neg_share),
            abs(ref["neu"] - ours.neu_share),
        )
        worst = max(worst, diff)
        if diff > 1e-12:
            mismatches.append((idx, text, ref, ours))
        compound = ref["compound"]
        label = "positive" if compound >= 0.05 else "negative" if compound <= -0.05 else "neutral"
        records.append(
            {
                "id": f"ref-{idx:04d}",
                "text": text,
                "compound": compound,
                "pos": ref["pos"],
                "neg": ref["neg"],
                "neu": ref["neu"],
                "label": label,
            }
        )

    for idx, text, ref, ours in mismatches[:10]:
        print(f"MISMATCH #{idx}: {text!r}")
        print(f"  reference : {ref}")
        print(f"  production: compound={ours.compound} pos={ours.pos_share} neg={ours.neg_share} neu={ours.neu_share}")
    if mismatches:
        raise SystemExit(f"{len(mismatches)} sentences diverge; fixture not frozen")

    labels = [r["label"] for r in records]
    print(f"max |delta| production vs reference: {worst:.3e}")
    print(f"label counts: positive={labels.count('positive')} "
          f"negative={labels.count('negative')} neutral={labels.count('neutral')}")

    out_path = REPO_ROOT / "tests" / "fixtures" / "vader_reference_fixture.jsonl"
    meta = {"generator": "scripts/make_reference_fixture.py", "count": len(records)}
    manifest.write_jsonl(out_path, records, meta=meta)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
