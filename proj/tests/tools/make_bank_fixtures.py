#!/usr/bin/env python3
"""Writes the labeled example bank and the reference compiled-prompt fixture.

The demo pairs originate from four open-access qualitative-coding datasets
(research-integrity, economic-recession, dementia product design and NICU
parenting studies, plus a Scrum software-quality study); they ship here as
the default bank for compiling and exercising the pairwise duplicate judge.
"""

import json
import pathlib

SIM = "the two texts have a similar meaning"
DIF = "the two texts have a different meaning"

# (text_1, text_2, meaning, rationale-or-None); the first four are the
# augmented demos of the reference compiled prompt.
DEMOS = [
    (
        "Open access. References to making R&I results publicly available (e.g. through open "
        "access publications) and / or to arguments for acting otherwise.",
        "Engaging with decision-makers. References to awareness of, and as far as possible, "
        "avoidance of actual or perceived conflicts of interest of the researchers and/or "
        "organisations performing the R&I.",
        DIF,
        "produce the meaning. We will analyze the content of Text 1 and Text 2 and compare "
        "them to determine if they have a similar or different meaning.",
    ),
    (
        "Medicines and health services. References and perceptions related to difficulties "
        "buying medicines and accessing health services during the economic recession",
        "Other essential goods. References and perceptions related to difficulties paying "
        "rent or bills, such as water and electricity during the economic recession",
        DIF,
        "produce the meaning. We will compare the references and perceptions related to "
        "difficulties buying medicines and accessing health services (Text 1) with the "
        "references and perceptions related to difficulties paying rent or bills, such as "
        "water and electricity (Text 2). By comparing these two texts, we can determine if "
        "they have the same meaning or a different meaning.",
    ),
    (
        "Organizations. References to regulation of R&I ethics on organizational level",
        "Research Organisations. Aspects related with the ethics and governance of research "
        "and innovation at the organisational level.",
        SIM,
        "produce the meaning. We can see that both texts are discussing the regulation and "
        "governance of research and innovation ethics at the organizational level. While the "
        "wording may be slightly different, the overall meaning is the same.",
    ),
    (
        "Accountability. Accountability is an expectation that an individual of the Scrum "
        "team will be evaluated on their performance including the quality of their work. It "
        "also means being answerable to the team's expectations.",
        "Linting tools. These codes are quality assurance and software engineering practices "
        "used to assure quality.",
        DIF,
        "produce the meaning. We will analyze the definitions and descriptions of the two "
        "texts and compare them to determine if they have a similar or different meaning.",
    ),
    (
        "Worries & fears with developmental milestones. Expressing fears for future regarding "
        "infant meeting developmental milestones and current fears of infant not meeting "
        "milestones presently",
        "Difficulty leaving baby. Describing leaving the baby in the NICU and then when at "
        "home as hard and emotionally stressful.",
        DIF,
        None,
    ),
    (
        "Emotional needs/bond (not feeling like a parent). Describes memories where the "
        "parent feels they were not able to engage in the typical emotional care needs of "
        "their child (being present, looking at baby, holding them) or bond with them.",
        "Parental Disconnect. Observations where the parents mention cases where they "
        "struggled to fulfill their child's needs and establish a bond. For example making "
        "eye contact.",
        SIM,
        None,
    ),
    (
        "Worries & fears with developmental milestones. Expressing fears for future regarding "
        "infant meeting developmental milestones and current fears of infant not meeting "
        "milestones presently",
        "Concerns about developmental milestones. References to concerns about the future "
        "regarding the ability of the baby to reach developmental milestones and worries "
        "about the progress.",
        SIM,
        None,
    ),
    (
        "Software quality is a complex concept. Two participant (out of eight) stated that "
        "software quality is a 'complex' concept, i.e., made up of different attributes that "
        "are linked complicated way.",
        "Understanding Software Quality. Two individuals (amongst eight) said that software "
        "quality is a difficult notion because it connects with many different things.",
        SIM,
        None,
    ),
    (
        "Individuals. References to self-regulation practices of R&I ethics on individual "
        "level.",
        "Individual autonomy. References to obtaining informed and voluntary consent from "
        "human participants (or their legal guardians) for taking part in R&I related "
        "activities and provide personal data and other information.",
        DIF,
        None,
    ),
    (
        "External quality. This code was used to categorize some software quality attributes "
        "(the above columns), e.g., free of defects and conformity to business needs).",
        "External quality. This script was employed to classify various attributes of "
        "software quality toward the external world, such as absence of flaws and alignment "
        "with business requirements.",
        SIM,
        None,
    ),
    (
        "Income loss. References and perceptions related to loss of income during the "
        "economic recession.",
        "Financial setback. How the respondents perceive and refer to the decline in their "
        "earnings and their income loss.",
        SIM,
        None,
    ),
    (
        "Empowerment and Self-reflection. This node summarizes why a person with dementia "
        "may be involved in the end-user study, speaking to how their involvement in this "
        "type of research creates a sense of empowerment for the participant.",
        "Promoting Independence. Observations about including individuals with dementia in "
        "the end-user study, this includes how this fosters empowerment for the participant.",
        SIM,
        None,
    ),
    (
        "External quality. This code was used to categorize some software quality attributes "
        "(the above columns), e.g., free of defects and conformity to business needs).",
        "Early engagement of QAs. This is another facet of the collaborative aspect of "
        "Scrum. The engagement of QA team members early on the development process shows "
        "that Scrum teams proactively engage rather than wait and see. Compared to the "
        "phased approach of software development where the QAs wait until the code is ready "
        "for testing, in Scrum, all team members are engaged early on the process to assume "
        "their responsibilities and contribute collaboratively in achieving the desired "
        "outcome.",
        DIF,
        None,
    ),
    (
        "Emotional needs/bond (not feeling like a parent). Describes memories where the "
        "parent feels they were not able to engage in the typical emotional care needs of "
        "their child (being present, looking at baby, holding them) or bond with them.",
        "Trauma and shock. Where parent describes situations where they felt it was "
        "traumatic or created a direct shock response (parent will use these words or use "
        "them indirectly through examples)",
        DIF,
        None,
    ),
    (
        "Ambiance/Physical Space. This node describes how participants felt the ambiance, "
        "e.g., a relaxed interview atmosphere with no feelings of pressure on them, and the "
        "physical space of the user experience research procedure itself, made them feel "
        "comfortable. This 'comfort' allowed participants to fully engage in the user "
        "experience research process without feeling shame/embarrassment for not knowing "
        "something, asking questions, etc. Participants also felt free to criticize the app. "
        "This atmosphere facilitated truthful participation.",
        "Pace. This node summarizes an important point of feedback from participants, namely "
        "that the interviewer conducted the user experience research process at a proper "
        "pace, which is important given the cognitive impairment exhibited by people with "
        "dementia.",
        DIF,
        None,
    ),
    (
        "Medical/psychological problems of parent. Descriptions provided of physical "
        "problems that the parent had either before, during, after the birth and also "
        "psychiatric problems the parent mentions having or believing to have had.",
        "Sense of responsibility for health of baby. Expressing thoughts and emotions "
        "related to feeling responsible for the prematurity",
        DIF,
        None,
    ),
    (
        "User Experience Research Location. Comments about how app user experience research "
        "sessions could be done by phone, problems with Zoom, etc.",
        "Remote User Research. References from participants about alternative methods for "
        "conducting user experience research remotely, such as conducting sessions over "
        "Zoom and other solutions.",
        SIM,
        None,
    ),
    (
        "Self-doubt with parenting. Expressing worries and doubts with thoughts of not "
        "meeting their child's needs or not knowing what to do",
        "Insecurity. References related to concerns and uncertainties about fulfilling their "
        "child's requirements or the parents' lack of knowledge on how to handle the "
        "situation.",
        SIM,
        None,
    ),
    (
        "Quality assurance. The set of practices, techniques and processes used to assure "
        "the quality requirements of the software. This code emerged for the data because it "
        "is part of one causal chain discussed by Participant 1 (see Causal Chains RQ1 tab). "
        "Other codes (e.g., Assuring clean code) were used to infer quality assurance.",
        "Peer review. These are quality assurance practices.",
        DIF,
        None,
    ),
    (
        "knowledge sharing. Our participants accounts show that knowledge sharing is the "
        "process of integrating individually held information and know-how into the common "
        "knowledge of the development team. This takes the form of either peer to peer "
        "learning or business user (sometimes through the proxy of the PO role) to "
        "developers (including QAs). Peer to peer learning is a practice in which Scrum team "
        "members exchange information and help each other's with their knowledge during the "
        "interaction with one another. This can happen during the Stand Ups or simply when a "
        "developers walk to his colleague to ask questions. Business users to developers "
        "knowledge sharing mainly concerns a better understanding the requirements.",
        "Sharing Knowledge. The participants said the sharing knowledge creates some form of "
        "collective knowledge of the development team. This can occur via peer-to-peer "
        "learning or through communication.",
        SIM,
        None,
    ),
    (
        "Returning to normality. Parent describes milestones or feelings where they feel "
        "that things are returning to how they were meant to be and back to a normative "
        "parent/family experience",
        "Lost experiences. Expressing missing out on an experience of a full-term birth and "
        "what the prematurity meant for the parents' identity and preformed ideals of what "
        "they would be doing as a parent of a new-born baby.",
        DIF,
        None,
    ),
    (
        "Precarious work conditions. References and perceptions related to precarious work "
        "conditions, such as pressure, stress and insecure work during the economic "
        "recession",
        "Precarious work conditions. References related with challenging work environments, "
        "like difficult demands, tension with employers and uncertain employment due to the "
        "financial crisis.",
        SIM,
        None,
    ),
    (
        "Respect. References to treatment of human participants with due consideration for "
        "their autonomy and dignity.",
        "Reliability. References to employment and (un)faithful application of "
        "(in)appropriate research methods and R&I related processes and procedures.",
        DIF,
        None,
    ),
    (
        "Early engagement of QAs. This is another facet of the collaborative aspect of "
        "Scrum. The engagement of QA team members early on the development process shows "
        "that Scrum teams proactively engage rather than wait and see. Compared to the "
        "phased approach of software development where the QAs wait until the code is ready "
        "for testing, in Scrum, all team members are engaged early on the process to assume "
        "their responsibilities and contribute collaboratively in achieving the desired "
        "outcome.",
        "Involvement of QA Team. References to the idea that QA team members are involved "
        "from the beginning of the development process. This is different from traditional "
        "software development.",
        SIM,
        None,
    ),
    (
        "Psychological safety. Our participants used, for example, less feared and no "
        "\"consequence\", to make reference to a psychological safe working environment. Our "
        "participants explained that promoting a sense of psychological safety empowers all "
        "involved people to feel comfortable showing initiative, investing effort on "
        "achieving quality and caring about the quality of the deliverables.",
        "Conformity to business needs. These codes are the attributes that constitute "
        "software quality. In some instances participants used different terms to mean the "
        "same thing. For example, 'meet business needs' and 'Meet the requirements of the "
        "end user' were used to imply conformity to business needs.",
        DIF,
        None,
    ),
    (
        "Feelings of fear. Parent describes experiences in the NICU or post NICU of feeling "
        "scared in the moment or due to future possibilities",
        "Anxiety. A parent recounts their overwhelming experiences in the NICU or post NICU, "
        "where they were consumed by anxiety and uncertainties.",
        SIM,
        None,
    ),
    (
        "Linting tools. These codes are quality assurance and software engineering practices "
        "used to assure quality.",
        "Accountability. Accountability is an expectation that an individual of the Scrum "
        "team will be evaluated on their performance including the quality of their work. It "
        "also means being answerable to the team's expectations.",
        DIF,
        None,
    ),
    (
        "Software quality. This code is the topic of RQ1. Some participants used 'product "
        "quality' instead of software quality. This code emerged for the data because it is "
        "part of multiple causal chains",
        "Quality of Software. A few participants referred to it as \"product quality\" "
        "instead of software quality.",
        SIM,
        None,
    ),
    (
        "Continuous improvements. This practice is advocated by the agile manifesto "
        "(Principle 12). It calls for the agile team to continuously identify impediments "
        "and acted upon them. Other codes (e.g., Reflecting on the Scrum process and "
        "Continuous reflections) used by participant to imply continuous improvements. There "
        "also codes (i.e., Learning, Continuous experimentation and adapting) which are part "
        "of the continuous improvements process.",
        "Constinuous software improvements. This is related to the agile manifesto "
        "(Principle 12) and the agile team should consistently recognise and address "
        "obstacles. Respondents use various methods for this (e.g., Analysing the Scrum "
        "process and Ongoing introspection) to signify ongoing enhancements.",
        SIM,
        None,
    ),
    (
        "Medical responses- dismissive, unhelpful. Expressing frustration at experiences "
        "where medical staff gave unhelpful advice/comments to the parent of did not believe "
        "them (where parent felt this)",
        "Medical problems of infant. Describing medical issues that the infant had upon "
        "birth, during the NICU, and after discharge. Gives a sense of the vulnerability of "
        "premature infants and their common relationship with illness and the medical "
        "system",
        DIF,
        None,
    ),
]


def main() -> None:
    root = pathlib.Path(__file__).resolve().parents[2] / "fixtures"

    bank = [{"text_1": t1, "text_2": t2, "meaning": m} for (t1, t2, m, _) in DEMOS]
    bank_path = root / "bank" / "meaning_bank.json"
    bank_path.parent.mkdir(parents=True, exist_ok=True)
    bank_path.write_text(json.dumps(bank, indent=1) + "\n", encoding="utf-8")

    demos = []
    for (t1, t2, m, rationale) in DEMOS:
        d = {}
        if rationale is not None:
            d["augmented"] = True
        d["text_1"] = t1
        d["text_2"] = t2
        if rationale is not None:
            d["rationale"] = rationale
        d["meaning"] = m
        demos.append(d)

    instructions = "Given the fields `text_1`, `text_2`, produce the fields `meaning`."
    program = {
        "generate_answer": {
            "lm": None,
            "traces": [],
            "train": [],
            "demos": demos,
            "signature_instructions": instructions,
            "signature_prefix": "Meaning:",
            "extended_signature_instructions": instructions,
            "extended_signature_prefix": "Meaning:",
        }
    }
    prompt_path = root / "judge" / "compiled_prompt_reference.json"
    prompt_path.parent.mkdir(parents=True, exist_ok=True)
    prompt_path.write_text(json.dumps(program, indent=1) + "\n", encoding="utf-8")

    n_sim = sum(1 for (_, _, m, _) in DEMOS if m == SIM)
    n_aug = sum(1 for (_, _, _, r) in DEMOS if r is not None)
    print(f"bank: {len(DEMOS)} examples ({n_sim} similar, {len(DEMOS) - n_sim} different)")
    print(f"compiled reference: {n_aug} augmented + {len(DEMOS) - n_aug} raw demos")


if __name__ == "__main__":
    main()
