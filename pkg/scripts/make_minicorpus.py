"""Regenerate the bundled mini corpus (seeded, so the output is stable).

Writes ~200 raw text documents into src/topicvec/data/: 190 synthetic
plot-like blurbs drawn from themed word lists, plus 10 public-domain
opening passages. Titles are unique and index-aligned.
"""

import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.normpath(os.path.join(HERE, "..", "src", "topicvec", "data"))

THEMES = {
    "space": """ship planet galaxy alien crew station orbit engine signal
        rocket colony asteroid commander launch gravity cosmos starlight
        module beacon voyage nebula capsule horizon probe""",
    "crime": """detective murder gang money heist police witness trial
        smuggler evidence alibi ransom syndicate informant vault robbery
        precinct fugitive warrant motive stakeout forgery racket confession""",
    "family": """mother father daughter home childhood wedding secret
        brother sister grandmother holiday letters farmhouse reunion
        inheritance kitchen garden memory promise supper orchard quilt""",
    "war": """army soldier battle general trench regiment siege border
        courier armistice convoy bunker frontline medal retreat artillery
        occupation resistance ceasefire battalion campaign fortress""",
    "sports": """team coach championship season match stadium rival
        training captain league trophy comeback injury playoff record
        underdog locker referee halftime victory tournament scoreboard""",
    "music": """band singer concert melody stage album piano chorus
        audition orchestra ballad rehearsal spotlight tour songwriter
        harmony encore studio lyric conductor quartet jukebox""",
    "sea": """ocean island captain storm harbor lighthouse tide sailor
        shipwreck lagoon voyage whale compass driftwood reef anchor
        monsoon smuggling cove galleon seabird mutiny saltwater""",
    "school": """school teacher student classroom exam professor library
        scholarship graduation campus lecture notebook principal semester
        debate yearbook detention chemistry homework recess dormitory""",
}

FILLERS = """the a an and of in to with for on at by from after before
    when where who that his her their its they she he it was is are were
    as but not this these those then than into over under about against
    during through between""".split()

CONNECTIVES = ["must face", "discovers", "returns to", "struggles with",
               "is drawn into", "fights for", "escapes from", "uncovers",
               "confronts", "falls for", "searches for", "loses"]

SNIPPETS = [
    ("Moby-Dick", "Call me Ishmael. Some years ago, never mind how long "
     "precisely, having little or no money in my purse, and nothing "
     "particular to interest me on shore, I thought I would sail about a "
     "little and see the watery part of the world."),
    ("Pride and Prejudice", "It is a truth universally acknowledged, that a "
     "single man in possession of a good fortune, must be in want of a "
     "wife. However little known the feelings or views of such a man may "
     "be on his first entering a neighbourhood, this truth is so well "
     "fixed in the minds of the surrounding families."),
    ("A Tale of Two Cities", "It was the best of times, it was the worst of "
     "times, it was the age of wisdom, it was the age of foolishness, it "
     "was the epoch of belief, it was the epoch of incredulity, it was the "
     "season of Light, it was the season of Darkness."),
    ("Frankenstein", "You will rejoice to hear that no disaster has "
     "accompanied the commencement of an enterprise which you have "
     "regarded with such evil forebodings. I arrived here yesterday, and "
     "my first task is to assure my dear sister of my welfare."),
    ("Dracula", "Left Munich at 8:35 P. M., on 1st May, arriving at Vienna "
     "early next morning; should have arrived at 6:46, but train was an "
     "hour late. Buda-Pesth seems a wonderful place, from the glimpse "
     "which I got of it from the train."),
    ("The Adventures of Sherlock Holmes", "To Sherlock Holmes she is always "
     "the woman. I have seldom heard him mention her under any other name. "
     "In his eyes she eclipses and predominates the whole of her sex."),
    ("The War of the Worlds", "No one would have believed in the last years "
     "of the nineteenth century that this world was being watched keenly "
     "and closely by intelligences greater than man's and yet as mortal as "
     "his own."),
    ("Treasure Island", "Squire Trelawney, Dr. Livesey, and the rest of "
     "these gentlemen having asked me to write down the whole particulars "
     "about Treasure Island, from the beginning to the end, keeping "
     "nothing back but the bearings of the island, I take up my pen."),
    ("Alice's Adventures in Wonderland", "Alice was beginning to get very "
     "tired of sitting by her sister on the bank, and of having nothing to "
     "do: once or twice she had peeped into the book her sister was "
     "reading, but it had no pictures or conversations in it."),
    ("The Wonderful Wizard of Oz", "Dorothy lived in the midst of the great "
     "Kansas prairies, with Uncle Henry, who was a farmer, and Aunt Em, "
     "who was the farmer's wife. Their house was small, for the lumber to "
     "build it had to be carried by wagon many miles."),
]

STOPWORDS = """a about above after again against all am an and any are as at
    be because been before being below between both but by cannot could did
    do does doing down during each few for from further had has have having
    he her here hers herself him himself his how i if in into is it its
    itself just me more most my myself no nor not now of off on once only or
    other our ours ourselves out over own same she should so some such than
    that the their theirs them themselves then there these they this those
    through to too under until up very was we were what when where which
    while who whom why will with would you your yours yourself yourselves"""


def synth_doc(rng, theme_words, theta):
    n_sent = rng.integers(4, 8)
    words = []
    for _ in range(n_sent):
        sent = []
        length = rng.integers(8, 15)
        for _ in range(length):
            if rng.random() < 0.35:
                sent.append(FILLERS[rng.integers(len(FILLERS))])
            else:
                k = rng.choice(len(theta), p=theta)
                pool = theme_words[k]
                sent.append(pool[rng.integers(len(pool))])
        if rng.random() < 0.2:
            sent.insert(rng.integers(len(sent)), CONNECTIVES[rng.integers(len(CONNECTIVES))])
        if rng.random() < 0.15:
            sent.append(str(rng.integers(1890, 2010)))
        sent[0] = sent[0].capitalize()
        words.append(" ".join(sent) + ".")
    return " ".join(words)


def make_title(rng, pool, used):
    patterns = ["The {a} {b}", "{a} of the {b}", "Return of the {a}",
                "The Last {a}", "A {a} for {b}", "{a} at the {b}",
                "Beyond the {a}", "The {a}'s {b}"]
    for _ in range(100):
        p = patterns[rng.integers(len(patterns))]
        a = pool[rng.integers(len(pool))].capitalize()
        b = pool[rng.integers(len(pool))].capitalize()
        title = p.format(a=a, b=b)
        if title not in used:
            used.add(title)
            return title
    title = f"Untitled {len(used)}"
    used.add(title)
    return title


def main():
    rng = np.random.default_rng(20250809)
    theme_names = list(THEMES)
    theme_words = [THEMES[t].split() for t in theme_names]
    K = len(theme_names)

    docs, titles = [], []
    used = set()
    for i in range(190):
        theta = rng.dirichlet(np.full(K, 0.15))
        docs.append(synth_doc(rng, theme_words, theta))
        main_theme = int(np.argmax(theta))
        if i == 42:
            title = "The Godfather"
            used.add(title)
        else:
            title = make_title(rng, theme_words[main_theme], used)
        titles.append(title)
    for title, text in SNIPPETS:
        docs.append(text)
        titles.append(title)

    os.makedirs(DATA, exist_ok=True)
    with open(os.path.join(DATA, "mini_plots.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(docs) + "\n")
    with open(os.path.join(DATA, "mini_titles.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(titles) + "\n")
    with open(os.path.join(DATA, "stopwords.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(STOPWORDS.split()) + "\n")
    print(f"wrote {len(docs)} documents to {DATA}")


if __name__ == "__main__":
    main()
