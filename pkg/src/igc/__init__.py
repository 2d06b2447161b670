"""McEliece-type encryption with interleaved Goppa codes and burst errors."""

from .cryptanalysis import AttackFailed, mk_attack, security_report
from .cryptosystem import (Ciphertext, DecryptionFailure, InsecureParameters, PrivateKey,
                           PublicKey, decrypt, encrypt, keygen)
from .fields import ExtensionField, Poly, PrimeField
from .goppa import GoppaCode, InvalidParameters, build_goppa

__all__ = [
    "AttackFailed", "Ciphertext", "DecryptionFailure", "ExtensionField", "GoppaCode",
    "InsecureParameters", "InvalidParameters", "Poly", "PrimeField", "PrivateKey", "PublicKey",
    "build_goppa", "decrypt", "encrypt", "keygen", "mk_attack", "security_report",
]
