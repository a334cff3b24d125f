"""Running the law registry: exhaustive over F2^2, sampled over Q^3."""
from linrel import GF, QQ
from linrel.generators import EXHAUSTIVE, GeneratorConfig
from linrel.laws import check_law, lookup, registry

print(len(registry()), "laws registered")

for law_id in ("lemma2.2", "prop3.6", "prop6.6", "prop6.6-partial"):
    law = lookup(law_id)
    v = check_law(law, GeneratorConfig(GF(2), 2, mode=EXHAUSTIVE))
    print(f"{law_id:18} tried {v.tried:7}  applicable {v.applicable:7}  failures {v.failure_count}")

v = check_law(lookup("prop6.6"), GeneratorConfig(GF(2), 2, mode=EXHAUSTIVE))
print("first counterexample:", v.failures[0]["instance"])

v = check_law(lookup("cor6.3"), GeneratorConfig(QQ, 3, seed=1, trials=50))
print("cor6.3 over Q^3:", "pass" if v.passed else "fail", v.applicable, "applicable")
