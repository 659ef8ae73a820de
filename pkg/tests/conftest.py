from rleacs.rle import SENTINEL_SECOND, Alphabet, RleSeq, encode


def make_pair(x_text: str, y_text: str, x_name: str = "X", y_name: str = "Y"):
    """Encode two texts over one shared alphabet, with distinct sentinels."""
    alphabet = Alphabet.for_texts([x_text, y_text])
    first = encode(x_text, x_name, alphabet)
    second = encode(y_text, y_name, alphabet, sentinel=SENTINEL_SECOND)
    return first, second, alphabet
