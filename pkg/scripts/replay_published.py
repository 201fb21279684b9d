"""Replay the published 2x2 exchange step by step through the party API."""

from aer import aag, published
from aer.aag import Role


def main() -> None:
    p = published.PARAMS
    alice = aag.make_party(Role.ALICE, p, published.WORD_A)
    bob = aag.make_party(Role.BOB, p, published.WORD_B)
    print("x   =", alice.private_element, " x^-1 =", alice.private_inverse)
    print("y   =", bob.private_element, " y^-1 =", bob.private_inverse)

    a_prime = aag.commit(alice)
    b_prime = aag.commit(bob)
    print("APrime =", aag.format_value(tuple(a_prime)))
    print("BPrime =", aag.format_value(tuple(b_prime)))

    k_a = aag.derive_key(alice, b_prime)
    k_b = aag.derive_key(bob, a_prime)
    oracle = aag.commutator_oracle(alice.private_element, bob.private_element)
    print("KEYalice =", k_a)
    print("KEYbob   =", k_b)
    print("[x, y]   =", oracle)
    assert k_a == k_b == oracle == published.SHARED_KEY


if __name__ == "__main__":
    main()
