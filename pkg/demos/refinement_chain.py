# Refining a zero-sum monoid until its inclusion into the free monoid is a divisor theory.

from blockmonoid import FgGroup, GroundSet, classify_primes, is_divisor_theory, refine_chain, verify_transfer

G0 = GroundSet.of(FgGroup(0, (4,)), [1, 2])
print("divisor theory already?", is_divisor_theory(G0))

c = classify_primes(G0)
print("classes", c.classes, "minimal", c.minimal, "exponents", c.e)

chain = refine_chain(G0)
for i, step in enumerate(chain.steps):
    print(f"step {i}: {len(step.source)} elements -> {list(step.target)} in {step.class_group}")
print("final:", chain.final.group, [g.coords for g in chain.final])

# theta sends 1^4 2^2 over C4 to 0^2 over the trivial group
B = G0.sequence((4, 2))
print(B, "->", chain.theta(B))

report = verify_transfer(chain, 10)
print(f"checked {report.checked} sequences, violations: {list(report.violations)}")

# a non-minimal class shows up as a gcd/min mismatch, which is reported, not raised
line = GroundSet.of(FgGroup(2), [(1, 0), (-2, 0), (-3, 0)])
step = refine_chain(line).steps[0]
print(step.diagnostics()["gcd_min_mismatch"], step.diagnostics()["non_minimal_classes"])
