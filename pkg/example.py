"""
Example usage of the proofmin package.

This example walks through:
- Generating benchmark formulas
- Minimizing a refutation and verifying the result
- Comparing search modes
- Measuring an LRAT certificate
"""

from proofmin import (
    LowerBounder,
    InstanceSpec,
    SearchConfig,
    generate,
    generate_mus_variant,
    measure,
    minimize,
    parse_dimacs,
    root_subproblem,
    verify_proof,
    write_proof,
)
from proofmin.logging import setup_logging

# Alternative import style:
# import proofmin
# outcome = proofmin.minimize(proofmin.parse_dimacs(text))

EXAMPLE_CNF = """\
c x or not y; not x; y
p cnf 2 3
1 -2 0
-1 0
2 0
"""

EXAMPLE_LRAT = "4 -2 0 1 2 0\n5 -2 0 1 2 0\n6 0 3 5 0\n"


def main():
    """Run the examples in order."""

    # 1️⃣ Parse a small formula and minimize it
    print("📄 Parsing the example formula...")
    formula = parse_dimacs(EXAMPLE_CNF)
    outcome = minimize(formula)
    print(f"   {outcome.to_text()}")
    print(write_proof(outcome.incumbent))

    # 2️⃣ Root bound
    print("📏 Root lower bound...")
    bound = LowerBounder(formula).bound(root_subproblem(formula))
    print(f"   {bound.to_text()}")

    # 3️⃣ Benchmark families
    print("🐦 Pigeonhole with two holes...")
    php2 = generate(InstanceSpec("php", {"holes": 2}))
    config = SearchConfig.for_mode("optimal", time_limit=120, progress_interval=5.0)
    outcome = minimize(php2, config,
                       progress=lambda event: print(f"   {event.to_text()}"))
    verdict = verify_proof(php2, outcome.incumbent)
    print(f"   {outcome.to_text()} ({verdict.to_text(len(outcome.incumbent))})")

    # 4️⃣ Modes on the same formula
    print("⚖️  Comparing modes on ordering(2)...")
    ordering2 = generate_mus_variant(generate(InstanceSpec("ordering", {"n": 2})))
    for mode in ("optimal", "short", "competition"):
        result = minimize(ordering2, SearchConfig.for_mode(mode, time_limit=60, is_mus=True))
        print(f"   {mode:<12} {result.to_text()}")

    # 5️⃣ LRAT measurement
    print("🔗 Measuring an LRAT certificate...")
    report = measure(formula, EXAMPLE_LRAT)
    print(f"   {report.to_text()}")

    print("✅ Done")


if __name__ == "__main__":
    setup_logging(verbose=False, log_directory="./logs")
    main()
