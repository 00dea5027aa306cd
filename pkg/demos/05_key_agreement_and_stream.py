# Key agreement and a toy stream
#
# The extractor takes the place of a hash in Diffie-Hellman key derivation.
# The stream generator is a demonstration only and is not a secure DRBG.

from ecx import Curve, PrimeField, PrngState, dh_derive, subgroup_from_generator
from ecx.keyflow import output_bits, pack_bits, prng_stream

E = Curve(PrimeField(11), 1, 6)
G = E.point(2, 7)

s = dh_derive(E, G, 13, 3, 5, 3)
print("single-source key:", s.alice_key.bits, "match:", s.alice_key == s.bob_key)

t = dh_derive(E, G, 13, 3, 5, 3, mode="two_source", second=(2 * G, 13, 4, 9))
print("two-source key:   ", t.alice_key.bits, "match:", t.alice_key == t.bob_key)

# ## Stream

sub = subgroup_from_generator(G)
state = PrngState(sub, sub, 1, 2, 3)
outs, state = prng_stream(state, 16)
bits = "".join(output_bits(o, 11) for o in outs)
print("bits :", bits)
print("bytes:", pack_bits(bits).hex(), " skipped:", state.skipped)
