#include <fstream>

#include "gsmds/structure_io.hpp"
#include "gsmds/textutil.hpp"
#include "nlohmann/json.hpp"

namespace gsmds {

namespace {

Exemplar ken_exemplar() {
    Exemplar ex;
    ex.question =
        "Ken created a package to send to his brother help him repair his house. Ken placed a box "
        "on a scale, and then he poured into the box enough nails to bring the weight to 2 pounds. "
        "Then, he added enough screws and bolts to cause the weight to triple. Next, he added to "
        "the package a set of socket wrenches whose total weight equaled 1/2 of the weight of the "
        "package so far. And finally, he added a bunch of drills and bits to double the weight "
        "once again.";
    ex.structure = R"(<structure>
Topics
[topic-a]: Ken's package creation for his brother's house repairs
[topic-b]: Incremental weight additions (nails, screws, bolts, socket wrenches, drills)
Relationships
t1--elab--t2
Premises
P1: Ken created a package to send to his brother to help repair his house.
P2: He placed a box on a scale and poured in nails until the weight reached 2 pounds.
P3: He then added enough screws and bolts to cause the weight to triple.
P4: Next, he added a set of socket wrenches weighing half the package's current total.
P5: Finally, he added drills and bits to double the weight once again.
Narrative Structure
P1--narr--P2
P2--narr--P3
P3--narr--P4
P4--narr--P5
</structure>)";
    ex.answer = R"(Step 1: Identify the initial weight of the package
The initial weight of the package after adding nails is 2 pounds, as stated in premise P2.

Step 2: Calculate the weight after adding screws and bolts
The weight triples after adding screws and bolts, so the new weight is 2 * 3 = 6 pounds, as stated in premise P3.

Step 3: Calculate the weight after adding socket wrenches
The weight of the socket wrenches is 1/2 of the current weight of the package, which is 6 pounds. So, the weight of the socket wrenches is 6 / 2 = 3 pounds. The total weight now is 6 + 3 = 9 pounds, as stated in premise P4.

Step 4: Calculate the final weight after adding drills and bits
The weight doubles after adding drills and bits, so the final weight is 9 * 2 = 18 pounds, as stated in premise P5.

The final answer is: 18)";
    return ex;
}

Exemplar sanjay_exemplar() {
    Exemplar ex;
    ex.question =
        "Sanjay saw a 60-foot dolphin with 16 12-inch remoras attached to it. But a quarter of "
        "the remoras go away. What percentage of the dolphin's body length is the combined length "
        "of the remaining remoras?";
    ex.structure = R"(<structure>
Topics
[topic-a]: Sanjay's observation of the dolphin
[topic-b]: The remoras attached to the dolphin
Relationships
t1--elab--t2
Premises
P1: Sanjay saw a 60-foot dolphin with 16 12-inch remoras attached to it.
P2: But a quarter of the remoras go away.
Narrative Structure
P1--narr--P2
</structure>)";
    ex.answer = R"(<answer>

From P1, we know that Sanjay saw a 60-foot dolphin with 16 12-inch remoras attached to it. From P2, we know that a quarter of the remoras go away.

Let's first calculate the length of the remaining remoras. If a quarter of the remoras go away, then the number of remoras remaining is:

16 - (16 / 4) = 16 - 4 = 12

So, there are 12 remaining remoras. Their combined length is:

12 * 12 = 144 inches

Now, let's calculate the percentage of the dolphin's body length that the combined length of the remaining remoras is. We know the dolphin is 60 feet long, which is equal to 720 inches (60 * 12).

The percentage of the dolphin's body length that the combined length of the remaining remoras is:

(144 / 720) * 100

Therefore, the combined length of the remaining remoras is 20% of the dolphin's body length.

</answer>)";
    return ex;
}

Exemplar kiwi_exemplar() {
    Exemplar ex;
    ex.question =
        "Oliver picks 44 kiwis on Friday. Then he picks 58 kiwis on Saturday. On Sunday, he picks "
        "double the number of kiwis he did on Friday, but five of them were a bit smaller than "
        "average. How many kiwis does Oliver have?";
    ex.structure = R"(<structure>
Topics
[topic-a]: Oliver's kiwi picking activities on consecutive days
[topic-b]: Sunday's special condition (five smaller kiwis)
Relationships
t1--elab--t2
Premises
P1: Oliver picks 44 kiwis on Friday.
P2: Then he picks 58 kiwis on Saturday.
P3: On Sunday, he picks double the number of kiwis he did on Friday.
P4: Among Sunday's kiwis, five are smaller than average.
P5: Oliver wants to know the total number of kiwis he has.
Narrative Structure
P1--narr--P2
P2--narr--P3
P3--bckgnd--P4
P3--narr--P5
</structure>)";
    ex.answer = R"(<answer>
To find the total number of kiwis Oliver has, we need to follow the premises as structured in the abstract.

From P1, we know Oliver picks 44 kiwis on Friday.

From P2, we know he picks 58 kiwis on Saturday.

From P3, we know on Sunday, he picks double the number of kiwis he did on Friday. Double the number of kiwis from Friday is 2 * 44 = 88 kiwis.

However, P3 is connected to P4 as background information, which means the information about Sunday's kiwis is additional context, but it doesn't affect the count of kiwis.

From P5, we know Oliver wants to know the total number of kiwis he has.

To find the total number of kiwis, we add the kiwis picked on Friday, Saturday, and Sunday.
Total kiwis = 44 (Friday) + 58 (Saturday) + 88 (Sunday) = 190 kiwis.

The five smaller kiwis mentioned in P4 do not affect the total count, as they are a subset of the kiwis picked on Sunday.

Therefore, Oliver has 190 kiwis.
</answer>)";
    return ex;
}

Exemplar thomas_exemplar() {
    Exemplar ex;
    ex.question =
        "Thomas withdraws $1000 in 20 dollar bills from the bank account. After getting home, he "
        "uses half of the remaining bills to pay for a bill. Thomas then triples his money. He "
        "then converts all his bills to 5 dollar bills. He lost 10 bills while getting home. How "
        "many 5 dollar bills does he have?";
    ex.structure = R"(<structure>
Topics
[topic-a]: Thomas's initial withdrawal
[topic-b]: Subsequent money actions
Relationships
t1--elab--t2
Premises
P1: Thomas withdraws $1000 in 20 dollar bills from the bank account.
P2: He lost 10 bills while getting home.
P3: After getting home, he uses half of the remaining bills to pay for a bill.
P4: Thomas then triples his money.
P5: He then converts all his bills to 5 dollar bills.
Narrative Structure
P1--elab--P2
P2--narr--P3
P3--narr--P4
P4--narr--P5
</structure>)";
    ex.answer = R"(<answer>
To determine the number of 5 dollar bills Thomas has, we will follow the premises in the given order.

1. Thomas withdraws $1000 in 20 dollar bills from the bank account (P1).
   Since each bill is $20, the number of bills is $1000 / $20 = 50 bills.

2. He lost 10 bills while getting home (P2).
   The remaining number of bills is 50 - 10 = 40 bills.

3. After getting home, he uses half of the remaining bills to pay for a bill (P3).
   Half of the remaining bills is 1/2 * 40 = 20 bills.
   He uses 20 bills to pay for a bill, leaving him with 40 - 20 = 20 bills.
   Since each bill is $20, the total amount of money he has is 20 * $20 = $400.

4. Thomas then triples his money (P4).
   He triples the $400, resulting in 3 * $400 = $1200.

5. He then converts all his bills to 5 dollar bills (P5).
   Since he now has $1200 and each bill is $5, the number of 5 dollar bills is $1200 / $5 = 240 bills.

Therefore, Thomas has 240 5 dollar bills.
</answer>)";
    return ex;
}

}  // namespace

const std::vector<Exemplar>& built_in_exemplars() {
    static const std::vector<Exemplar> kExemplars = {
        ken_exemplar(),
        sanjay_exemplar(),
        kiwi_exemplar(),
        thomas_exemplar(),
    };
    return kExemplars;
}

std::vector<Exemplar> load_exemplars_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structure_io_error("cannot open exemplar file: " + path);
    std::vector<Exemplar> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw structure_io_error("exemplar line " + std::to_string(lineno) + ": invalid JSON");
        }
        Exemplar ex;
        ex.question = j.value("question", "");
        ex.structure = j.value("structure", "");
        ex.answer = j.value("answer", "");
        if (ex.question.empty()) {
            throw structure_io_error("exemplar line " + std::to_string(lineno) +
                                     ": missing 'question'");
        }
        out.push_back(std::move(ex));
    }
    return out;
}

void save_exemplars_jsonl(const std::string& path, const std::vector<Exemplar>& exemplars) {
    std::ofstream out(path);
    if (!out) throw structure_io_error("cannot write exemplar file: " + path);
    for (const Exemplar& ex : exemplars) {
        nlohmann::json j{{"question", ex.question}, {"structure", ex.structure}, {"answer", ex.answer}};
        out << j.dump() << "\n";
    }
}

}  // namespace gsmds
