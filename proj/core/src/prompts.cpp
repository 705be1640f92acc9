#include "gsmds/structure_io.hpp"

namespace gsmds {

// Shipped system prompts. Indentation and line breaks are part of the prompt
// contract and must not be reflowed.

const std::string& structure_gen_system_prompt() {
    static const std::string kPrompt = R"(Task: Analyze a short story using a structured relational framework, ensuring proper sequencing and relational mapping.

Instructions:

    Identify Topics and Premises:
        - Assign meaningful topic labels to key elements of the story
          (e.g., [topic-a]: Initial context, [topic-b]: Character's key action).
        - List premises (P1, P2, ..., Pn) capturing essential events or actions.

    Apply Narrative Sequencing Rules:
        - Maintain chronological order unless a tense shift occurs.
        - If a premise introduces a temporal shift, attach it using appropriate
          relations (e.g., Narr for sequential events, Bkg for background details).
        - Adjust premise order based on discourse markers and time references.

        Temporal & Discourse Adverbials:
        - "Then," "Next," "XY later": Attach Pi to Pi-1 using Narr.
        - "XY before": Attach Pi to Pi-1 using Narr for reverse ordering.
        - "While": Use Elaboration (elab) to connect related events.
        - "Finally": Ensure Pi is the last premise.
        - "First": Ensure Pi is the initial premise.

        Day-Specific Rules:
        - If Pi: "Day n B" and Pi+1: "Day n+1 B," attach Pi to Pi+1 using Narr.
        - If days are out of order, shuffle until proper sequential flow is restored.

    Label Relationships Between Elements:
        - Use t1--relation--t2 for topic-level relationships (e.g., cause-effect).
        - Use PX--relation--PY for premise-level relationships.

Output Format:

    Topics:
    - List identified topics with brief descriptions.

    Relationships:
    - Describe logical and temporal relationships between topics and premises.

    Premises:
    - Present premises (P1, P2, ..., Pn) in a logically ordered sequence.

    Narrative Structure:
    - Show premise connections based on sequencing rules.

    Exclusions:
    - Do not include resolution, calculations, or final answers.)";
    return kPrompt;
}

const std::string& answer_ds_system_prompt() {
    static const std::string kPrompt = R"(Task: Given a set of premises and an abstract that defines their properties, determine the answer to the question using only the information provided in the abstract. The abstract provides a structured relational framework, ensuring logical consistency in reasoning.

Instructions:

    Identify Topics and Premises:
        - Assign meaningful topic labels to the key elements of the problem
          (e.g., [topic-a]: Initial context, [topic-b]: Events influencing
          the outcome).
        - List the premises (P1, P2, ..., Pn), ensuring they contain all
          necessary descriptive statements.

    Apply Narrative Sequencing Rules Between Premises:
        - Maintain chronological order unless explicitly defined otherwise in
          the abstract.
        - If a premise introduces a temporal or logical shift, attach it
          accordingly using appropriate relations (e.g., Narr for sequential
          events, Bkg for background information).
        - Resolve premise reordering constraints based on given discourse markers.

    Use the Abstract's Structured Information to Derive the Answer:
        - Follow the relationships and premises as structured in the abstract.
        - Do not introduce external knowledge; rely solely on the provided
          abstract and premises.
        - If numerical reasoning is required, apply logical derivations based
          on the premises.

Output Format:

    <answer>
    - Provide the final computed or inferred answer.
    - Ensure it aligns with the logical structure in the abstract.
    </answer>)";
    return kPrompt;
}

const std::string& answer_plain_system_prompt() {
    static const std::string kPrompt =
        "Solve the grade school math problem step by step. "
        "End your response with a line of the form \"The final answer is: X\".";
    return kPrompt;
}

}  // namespace gsmds
