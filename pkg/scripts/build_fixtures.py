#!/usr/bin/env python3
"""Regenerate the bundled fixture data.

Outputs (all committed, regenerated only when the fixture design changes):

* src/slangbench/data/fixtures/fixture_lexicon.jsonl  — 500 entries
* src/slangbench/data/fixtures/fixture_corpus.jsonl   — 100 usages
* tests/data/uncontrolled_replay.jsonl                — recorded campaign

Run from the repo root: python3 scripts/build_fixtures.py
"""

import json
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from slangbench.embedding import HashEmbedder  # noqa: E402
from slangbench.genpipe import GenerationJob, TranscriptRecorder, generate_uncontrolled  # noqa: E402
from slangbench.lexicon import read_lexicon  # noqa: E402

FIXTURE_DIR = ROOT / "src" / "slangbench" / "data" / "fixtures"
TEST_DATA_DIR = ROOT / "tests" / "data"


# ---------------------------------------------------------------------------
# lexicon: curated base entries plus derived inflections


NOUNS = {
    "foot": "the lower extremity of the leg below the ankle",
    "ball": "a round object used in games and sports",
    "dog": "a domesticated carnivorous mammal kept as a pet",
    "cat": "a small domesticated feline animal",
    "house": "a building in which people live",
    "water": "a clear liquid essential for life",
    "fire": "the visible combustion of material producing heat",
    "light": "the natural agent that makes things visible",
    "stone": "a hard solid piece of mineral matter",
    "tree": "a tall woody perennial plant with a trunk",
    "book": "a set of written pages bound together",
    "road": "a paved way leading from one place to another",
    "bread": "a baked food made from flour and water",
    "milk": "a white liquid produced by mammals to feed young",
    "moon": "the natural satellite that orbits the earth",
    "star": "a luminous ball of gas visible in the night sky",
    "cloud": "a visible mass of water droplets in the sky",
    "rain": "condensed moisture falling in drops from the sky",
    "snow": "frozen precipitation in the form of white flakes",
    "wind": "the perceptible natural movement of air",
    "storm": "a violent disturbance of the atmosphere",
    "river": "a large natural stream of flowing water",
    "mountain": "a large natural elevation of the earth's surface",
    "valley": "a low area of land between hills",
    "ocean": "a very large expanse of salt water",
    "island": "a piece of land surrounded by water",
    "bridge": "a structure carrying a path over an obstacle",
    "tower": "a tall narrow building or structure",
    "castle": "a large fortified building from medieval times",
    "garden": "a plot of ground where plants are cultivated",
    "flower": "the colorful reproductive part of a plant",
    "grass": "low green plants covering lawns and fields",
    "leaf": "a flat green organ growing from a plant stem",
    "root": "the part of a plant that grows underground",
    "branch": "a woody arm growing from the trunk of a tree",
    "seed": "the small unit of a plant from which a new one grows",
    "fruit": "the sweet seed-bearing product of a plant",
    "apple": "a round fruit with firm flesh and a green or red skin",
    "orange": "a round citrus fruit with a tough reddish-yellow rind",
    "lemon": "a yellow citrus fruit with acidic juice",
    "zucchini": "a long green summer squash eaten as a vegetable",
    "potato": "a starchy tuber eaten as a staple vegetable",
    "couch": "a long upholstered seat for several people",
    "chair": "a seat for one person with a back and legs",
    "table": "a piece of furniture with a flat top on legs",
    "door": "a hinged barrier for closing an entrance",
    "window": "an opening in a wall fitted with glass",
    "wall": "a vertical structure enclosing or dividing an area",
    "floor": "the lower surface of a room walked upon",
    "roof": "the structure covering the top of a building",
    "kitchen": "a room where food is prepared and cooked",
    "bottle": "a narrow-necked container for liquids",
    "cup": "a small open container used for drinking",
    "plate": "a flat dish from which food is eaten",
    "knife": "a cutting instrument with a blade and handle",
    "spoon": "an eating utensil with a shallow bowl on a handle",
    "basket": "a container woven from flexible material",
    "rope": "a length of strong thick cord",
    "chain": "a series of connected metal links",
    "wheel": "a circular object that revolves on an axle",
    "engine": "a machine that converts energy into motion",
    "boat": "a small vessel for travelling on water",
    "train": "a connected line of railway carriages",
    "wagon": "a four-wheeled vehicle for transporting goods",
    "street": "a public road in a city or town",
    "market": "a place where goods are bought and sold",
    "school": "an institution for educating children",
    "teacher": "a person who instructs students",
    "student": "a person who is studying at a school",
    "doctor": "a person qualified to treat sick people",
    "farmer": "a person who works the land or raises livestock",
    "soldier": "a person who serves in an army",
    "king": "a male ruler of an independent state",
    "queen": "a female ruler of an independent state",
    "friend": "a person with whom one has a bond of affection",
    "family": "a group of parents and their children",
    "child": "a young human being below the age of puberty",
    "mother": "a female parent",
    "father": "a male parent",
    "brother": "a male sibling",
    "sister": "a female sibling",
    "morning": "the early part of the day before noon",
    "evening": "the period near the end of the day",
    "night": "the period of darkness between sunset and sunrise",
    "day": "a period of twenty-four hours",
    "week": "a period of seven days",
    "month": "a period of roughly thirty days",
    "year": "a period of twelve months",
    "hour": "a period of sixty minutes",
    "minute": "a period of sixty seconds",
    "summer": "the warmest season of the year",
    "winter": "the coldest season of the year",
    "spring": "the season after winter when plants begin to grow",
    "autumn": "the season between summer and winter",
    "money": "a medium of exchange in the form of coins or notes",
    "gold": "a precious yellow metallic element",
    "silver": "a shiny greyish-white precious metal",
    "iron": "a strong hard magnetic metal",
    "glass": "a hard brittle transparent substance",
    "paper": "thin material made from pulped fibres for writing on",
    "letter": "a written message sent to someone",
    "story": "an account of imaginary or real events",
    "song": "a short musical composition with words",
    "music": "vocal or instrumental sounds combined harmoniously",
    "dance": "a series of rhythmic body movements to music",
    "game": "an activity engaged in for amusement",
    "voice": "the sound produced in a person's larynx",
    "hand": "the end part of the arm beyond the wrist",
    "head": "the upper part of the body containing the brain",
    "heart": "the organ that pumps blood through the body",
    "eye": "the organ of sight",
    "ear": "the organ of hearing",
    "mouth": "the opening through which food is taken in",
    "tooth": "a hard bony structure in the jaw used for chewing",
    "hair": "the fine strands growing from the skin of the head",
    "bone": "the hard tissue forming the skeleton",
    "skin": "the thin outer covering of the body",
    "blood": "the red liquid circulating in the body",
    "zing": "a quality of liveliness, zest or piquancy",
    "whisk": "a utensil for beating eggs or cream",
    "jam": "a sweet spread made from crushed fruit",
    "lantern": "a lamp with a transparent case protecting the flame",
    "fish": "a cold-blooded animal living wholly in water",
    "bird": "a warm-blooded egg-laying animal with feathers",
    "horse": "a large four-legged animal used for riding",
    "sheep": "a grass-eating animal kept for wool and meat",
    "goat": "a hardy domesticated animal with horns",
    "mouse": "a small rodent with a pointed snout",
    "spider": "an eight-legged arachnid that spins webs",
    "bee": "a stinging insect that collects nectar and makes honey",
    "ant": "a small industrious social insect",
    "worm": "a long soft-bodied creeping animal",
    "shadow": "a dark shape cast on a surface by a body blocking light",
    "dream": "a series of images occurring during sleep",
    "ladder": "a structure of rungs for climbing up or down",
    "step": "an act of lifting and setting down the foot in walking",
    "line": "a long narrow mark or band",
    "umbrella": "a folding canopy carried for protection against rain",
    "pocket": "a small bag sewn into clothing for carrying items",
    "button": "a small disc sewn to a garment as a fastener",
    "needle": "a slender pointed instrument used in sewing",
    "thread": "a thin strand of cotton or other fibre",
    "blanket": "a large piece of woollen material used as a covering",
    "pillow": "a cushion used to support the head in bed",
    "mirror": "a surface that reflects a clear image",
    "clock": "an instrument for measuring and showing time",
    "bell": "a hollow metal object that rings when struck",
    "drum": "a percussion instrument sounded by being struck",
    "flag": "a piece of cloth used as a symbol or signal",
    "crown": "an ornamental headdress worn by a monarch",
    "sword": "a weapon with a long metal blade",
    "shield": "a broad piece of armour carried for protection",
    "arrow": "a shafted projectile shot from a bow",
    "anchor": "a heavy object used to moor a vessel to the sea bottom",
    "sail": "a sheet of fabric spread to catch the wind on a boat",
    "harbor": "a sheltered place where ships may moor",
    "desert": "a dry barren area of land with little rain",
    "forest": "a large area covered chiefly with trees",
    "meadow": "a piece of grassland, especially one used for hay",
    "path": "a way or track laid down for walking",
    "gate": "a hinged barrier used to close an opening in a fence",
    "fence": "a barrier enclosing an area of ground",
    "barn": "a large farm building used for storage",
    "well": "a shaft sunk into the ground to obtain water",
    "mill": "a building equipped with machinery for grinding grain",
    "oven": "an enclosed compartment in which food is cooked",
    "candle": "a cylinder of wax with a central wick for light",
    "lamp": "a device for giving light",
    "box": "a container with a flat base and sides",
    "bag": "a flexible container with an opening at the top",
    "coat": "an outer garment with sleeves",
    "hat": "a shaped covering for the head",
    "shoe": "a covering for the foot with a sturdy sole",
    "glove": "a covering for the hand with separate fingers",
    "ring": "a small circular band worn on a finger",
    "map": "a diagrammatic representation of an area",
    "key": "a shaped piece of metal for operating a lock",
    "lock": "a mechanism for keeping a door fastened",
    "nail": "a small metal spike driven into wood",
    "hammer": "a tool with a heavy head for driving nails",
    "saw": "a tool with a toothed blade for cutting",
    "brush": "an implement with bristles for cleaning or painting",
    "bucket": "an open container with a handle for carrying liquids",
    "barrel": "a cylindrical container bulging out in the middle",
    "cart": "a two-wheeled vehicle pulled by an animal",
    "plough": "a farming implement for turning over soil",
    "backwash": "the backward flow of water from the motion of oars",
    "cinderblock": "a building block made of coal cinders and cement",
    "switchblade": "a knife whose blade springs out of the handle",
    "lanternfish": "a small deep-sea fish with light-producing organs",
    "bathrobe": "a loose robe worn before and after bathing",
    "glacier": "a slowly moving mass of ice formed from compacted snow",
    "hubcap": "a metal cover for the hub of a vehicle wheel",
    "stepladder": "a short folding ladder with flat steps",
    "memory": "the faculty by which the mind stores information",
    "meatloaf": "a dish of minced meat baked in the shape of a loaf",
    "flashdrive": "a small portable data storage device",
    "scatterbrain": "a person who is disorganized and forgetful",
    "jogger": "a person who runs at a gentle pace for exercise",
}

VERBS = {
    "spin": "to rotate rapidly about an axis",
    "run": "to move at a speed faster than a walk",
    "jump": "to push oneself off a surface into the air",
    "walk": "to move along on foot at a regular pace",
    "talk": "to speak in order to give information",
    "sing": "to make musical sounds with the voice",
    "read": "to look at and comprehend written matter",
    "write": "to mark letters or words on a surface",
    "draw": "to produce a picture by making lines",
    "paint": "to apply colour to a surface with a brush",
    "build": "to construct something by putting parts together",
    "break": "to separate into pieces under force",
    "carry": "to support and move something from place to place",
    "throw": "to propel something through the air with the arm",
    "catch": "to intercept and hold a moving object",
    "push": "to exert force on something to move it away",
    "pull": "to exert force on something to move it nearer",
    "lift": "to raise something to a higher position",
    "drop": "to let something fall",
    "hold": "to grasp or keep something in the hands",
    "open": "to move something so it is no longer closed",
    "close": "to move something so as to block an opening",
    "cut": "to divide something using a sharp edge",
    "tear": "to pull something apart by force",
    "fold": "to bend something over on itself",
    "wash": "to clean something with water",
    "cook": "to prepare food by heating it",
    "bake": "to cook food by dry heat in an oven",
    "boil": "to heat a liquid until it bubbles",
    "pour": "to cause a liquid to flow from a container",
    "drink": "to take liquid into the mouth and swallow it",
    "eat": "to put food into the mouth and swallow it",
    "sleep": "to rest in a state of unconsciousness",
    "wake": "to emerge from sleep",
    "stand": "to be upright supported by the feet",
    "sit": "to rest with the body supported by the buttocks",
    "lie": "to be in a horizontal resting position",
    "climb": "to go up something towards the top",
    "swim": "to propel oneself through water with the limbs",
    "fly": "to move through the air on wings",
    "float": "to rest on the surface of a liquid",
    "sink": "to go down below the surface of a liquid",
    "dig": "to break up and move earth with a tool",
    "plant": "to place a seed or plant in the ground to grow",
    "grow": "to increase in size by natural development",
    "pick": "to take hold of and remove something",
    "pluck": "to pull or pick something off quickly",
    "twirl": "to spin or rotate quickly and lightly",
    "whirl": "to turn round rapidly",
    "toss": "to throw something lightly or casually",
    "shake": "to move quickly up and down or side to side",
    "wave": "to move the hand to and fro in greeting",
    "point": "to direct attention with an extended finger",
    "touch": "to come into contact with something",
    "listen": "to give attention to sound",
    "watch": "to look at something attentively",
    "search": "to look carefully in order to find something",
    "find": "to discover something after searching",
    "hide": "to put something out of sight",
    "keep": "to continue to have possession of something",
    "give": "to hand something over to someone",
    "take": "to reach for and hold something",
    "send": "to cause something to go to a destination",
    "bring": "to carry something to a place",
    "buy": "to obtain something in exchange for payment",
    "sell": "to hand over something in exchange for money",
    "trade": "to exchange goods or services",
    "count": "to determine the total number of something",
    "measure": "to find the size or amount of something",
    "weigh": "to find how heavy something is",
    "teach": "to impart knowledge to someone",
    "learn": "to gain knowledge or skill by study",
    "help": "to make it easier for someone to do something",
    "work": "to engage in activity to achieve a result",
    "rest": "to cease activity in order to recover strength",
    "play": "to engage in activity for enjoyment",
    "laugh": "to make sounds expressing amusement",
    "cry": "to shed tears from distress or emotion",
    "smile": "to form the features into a pleased expression",
    "shout": "to utter a loud call",
    "whisper": "to speak very softly",
    "ask": "to say something in order to obtain an answer",
    "answer": "to say something in response to a question",
    "begin": "to start doing something",
    "finish": "to bring a task to an end",
    "wait": "to stay where one is until something happens",
    "hurry": "to move or act with haste",
    "travel": "to make a journey",
    "arrive": "to reach a destination",
    "leave": "to go away from a place",
    "return": "to come back to a place",
    "follow": "to go after someone or something",
    "lead": "to show the way by going in front",
    "turn": "to move in a circular direction",
    "bend": "to shape something into a curve",
    "stretch": "to extend something to its full length",
    "squeeze": "to press something firmly from opposite sides",
    "rub": "to move one surface against another with pressure",
    "scratch": "to score a surface with something sharp",
    "polish": "to make a surface smooth and shiny by rubbing",
    "mend": "to repair something that is broken",
    "burn": "to be consumed by fire",
    "freeze": "to turn to ice through extreme cold",
    "melt": "to become liquid through heating",
    "mix": "to combine substances together",
    "stir": "to move a liquid around with an implement",
    "zip": "to fasten something with a sliding fastener",
}

ADJECTIVES = {
    "quick": "moving fast or done in a short time",
    "slow": "moving at a low speed",
    "bright": "giving out or reflecting much light",
    "dark": "with little or no light",
    "heavy": "of great weight",
    "soft": "easy to press or mould",
    "hard": "solid and resistant to pressure",
    "warm": "of a comfortably high temperature",
    "cold": "of a low temperature",
    "tall": "of great height",
    "short": "of small height or length",
    "wide": "of great extent from side to side",
    "narrow": "of small width",
    "deep": "extending far down from the top",
    "shallow": "of little depth",
    "clean": "free from dirt or marks",
    "dirty": "covered with dirt or grime",
    "loud": "producing much noise",
    "quiet": "making little or no noise",
    "sweet": "having the pleasant taste of sugar",
    "sour": "having a sharp acidic taste",
    "bitter": "having a sharp unpleasant taste",
    "fresh": "recently made or obtained",
    "stale": "no longer fresh or new",
    "smooth": "having an even surface without lumps",
    "rough": "having an uneven or irregular surface",
    "sharp": "having an edge able to cut",
    "blunt": "lacking a sharp edge or point",
    "strong": "having great physical power",
    "weak": "lacking physical strength",
    "young": "having lived for only a short time",
    "old": "having lived for a long time",
    "new": "recently made or introduced",
    "empty": "containing nothing",
    "full": "containing as much as possible",
    "round": "shaped like a circle or sphere",
    "flat": "having a level even surface",
    "straight": "extending without a curve or bend",
    "crooked": "bent or twisted out of shape",
    "happy": "feeling or showing pleasure",
    "sad": "feeling or showing sorrow",
    "angry": "feeling or showing strong displeasure",
    "calm": "not showing or feeling agitation",
    "brave": "ready to face danger without fear",
    "shy": "nervous or timid with other people",
    "wise": "having sound judgement and knowledge",
    "foolish": "lacking good sense or judgement",
    "rich": "having a great deal of money",
    "poor": "having very little money",
    "hungry": "feeling a need for food",
    "thirsty": "feeling a need to drink",
    "tired": "in need of sleep or rest",
}

# entries carrying an informal sense alongside (or instead of) a plain one
INFORMAL = {
    "cool": [("moderately cold", []),
             ("excellent, admirable or fashionable", ["slang"])],
    "mint": [("an aromatic plant used for flavouring", []),
             ("in perfect unused condition", ["slang"])],
    "bare": [("not clothed or covered", []),
             ("a great many, very much", ["slang"])],
    "lit": [("provided with light", []),
            ("exciting or excellent", ["slang"])],
    "dap": [("a light bouncing step", []),
            ("a fist-bump greeting between friends", ["slang"])],
    "cuckoo": [("a bird known for its two-note call", []),
               ("crazy or silly", ["slang"])],
    "ace": [("a playing card with a single spot", []),
            ("very good or skilled", ["informal"])],
    "digs": [("archaeological excavations", []),
             ("a place where one lives", ["informal"])],
    "grub": [("the larva of an insect", []),
             ("food", ["slang"])],
    "chill": [("an unpleasant feeling of coldness", []),
              ("to relax or calm down", ["slang"])],
    "beef": [("the flesh of a cow used as food", []),
             ("a grievance or quarrel", ["slang"])],
    "bread": None,  # slang sense appended to the noun entry below
    "dough": [("a thick mixture of flour and liquid for baking", []),
              ("money", ["slang"])],
    "wheels": [("a set of wheels", []),
               ("a car", ["slang"])],
    "crash": [("to collide violently with an obstacle", []),
              ("to sleep at someone else's place", ["slang"])],
    "flake": [("a small thin piece of something", []),
              ("an unreliable person who cancels plans", ["slang"])],
    "hype": [("extravagant promotion or publicity", []),
             ("excitement or enthusiasm", ["slang"])],
    "salty": [("tasting of or containing salt", []),
              ("bitter or resentful", ["slang"])],
    "ghost": [("the apparition of a dead person", []),
              ("to cut off contact with someone abruptly", ["slang"])],
    "jargon": [("special words used by a profession", ["jargon"])],
    "kludge": [("a clumsy but workable solution", ["jargon"])],
    "gig": [("a light two-wheeled carriage", []),
            ("a live musical performance or short-term job", ["informal"])],
    "spud": [("a potato", ["informal"])],
    "racket": [("a loud unpleasant noise", []),
               ("a dishonest money-making scheme", ["informal"])],
    "kick the bucket": [("to die", ["idiomatic"])],
    "spill the beans": [("to reveal a secret", ["idiomatic"])],
    "sloshed": [("splashed or spilt", []),
                ("extremely drunk", ["slang"])],
    "spin the bottle": [("a kissing game played in a circle", [])],
    "day one": [("the very beginning of an undertaking", [])],
    "couch potato": [("a person who lounges about watching television", ["informal"])],
}


def build_lexicon_records():
    records = []

    def add(word, senses):
        records.append({"word": word, "senses": [
            {"glosses": [gloss], **({"tags": tags} if tags else {})}
            for gloss, tags in senses
        ]})

    for word, gloss in NOUNS.items():
        senses = [(gloss, [])]
        if word == "bread":
            senses.append(("money", ["slang"]))
        if word == "fire":
            senses.append(("excellent or impressive", ["slang"]))
        add(word, senses)
    for word, gloss in VERBS.items():
        add(word, [(gloss, [])])
    for word, gloss in ADJECTIVES.items():
        add(word, [(gloss, [])])
    for word, senses in INFORMAL.items():
        if senses is not None:
            add(word, senses)

    base_count = len(records)
    # pad to exactly 500 headwords with Wiktionary-style derived forms
    taken = {r["word"] for r in records}
    derived = []
    for word in NOUNS:
        derived.append((word + "s", f"plural of {word}"))
    for word in VERBS:
        if word.endswith("e"):
            derived.append((word[:-1] + "ing", f"present participle of {word}"))
        else:
            derived.append((word + "ing", f"present participle of {word}"))
    for word, gloss in derived:
        if len(taken) >= 500:
            break
        if word in taken:
            continue
        taken.add(word)
        records.append({"word": word, "senses": [{"glosses": [gloss]}]})
    if len(taken) != 500:
        raise SystemExit(f"lexicon fixture has {len(taken)} headwords (base {base_count}), want 500")
    return records


# ---------------------------------------------------------------------------
# corpus: 100 usages across sources and conditions


HUMAN_REUSE = [
    ("cuckoo", "crazy or absurd.", "He's completely cuckoo if he thinks that plan works."),
    ("fire", "exceptionally good or exciting.", "That new track is pure fire."),
    ("bread", "money, especially earnings.", "Gotta go to work and make that bread."),
    ("ghost", "to vanish from someone's life without explanation.",
     "He ghosted me right after the second date."),
    ("salty", "bitter and resentful over a small slight.",
     "She's still salty about losing that board game."),
    ("chill", "relaxed and easygoing.", "Don't worry, my parents are chill about visitors."),
    ("flake", "a person who habitually cancels plans.",
     "Jordan is such a flake, that's the third dinner cancelled."),
    ("beef", "an ongoing quarrel or grudge.", "Those two have had beef since high school."),
    ("dough", "money in general.", "That side job brings in decent dough."),
    ("wheels", "a personal car.", "Nice wheels, when did you get them?"),
    ("crash", "to sleep over, especially unplanned.", "Mind if I crash on your couch tonight?"),
    ("grub", "food, especially a casual meal.", "Let's grab some grub before the show."),
    ("digs", "one's home or lodgings.", "Come see my new digs downtown."),
    ("ace", "a person who excels at something.", "She's an ace at parallel parking."),
    ("mint", "in flawless condition.", "The bike is ten years old but still mint."),
    ("lit", "thrilling and full of energy.", "The rooftop party was absolutely lit."),
    ("bare", "a large amount of, very many.", "There were bare people at the market today."),
    ("dap", "a casual fist-bump greeting.", "He gave me a quick dap on the way out."),
    ("umbrella", "a person who shields others from blame.",
     "Our manager is an umbrella whenever the client gets angry."),
    ("lantern", "someone who stays cheerful in grim situations.",
     "Rosa is the lantern of this office, even during layoffs."),
    ("anchor", "a person who keeps a group steady under stress.",
     "Marcus is the anchor of our kitchen crew on busy nights."),
    ("bridge", "a friend who introduces people to each other.",
     "Tanya was the bridge that got me into this crowd."),
    ("stone", "a completely unresponsive person.", "I texted him twice, total stone."),
    ("spud", "an affectionate name for a clumsy friend.",
     "Get over here, you spud, and hug me."),
    ("racket", "a suspiciously easy way of earning money.",
     "Selling lecture notes turned into a nice little racket."),
]

HUMAN_MULTIWORD = [
    ("day one", "a loyal friend from the very beginning.",
     "He's my day one, we grew up on the same street."),
    ("couch potato", "a person who lazes on the sofa watching television.",
     "I turned into a couch potato over the holidays."),
    ("spin the bottle", "to take a random risky chance.",
     "Picking a roommate online is basically spin the bottle."),
    ("kick the bucket", "to break down permanently.",
     "That old laptop could kick the bucket any day now."),
    ("spill the beans", "to reveal a surprise too early.",
     "Don't spill the beans about the party."),
    ("stone fruit", "a deeply unhelpful committee.",
     "The planning board is a real stone fruit this year."),
    ("milk run", "an easy and uneventful errand.",
     "The airport drop-off was a milk run this morning."),
    ("bread crumb", "a tiny hint deliberately left behind.",
     "She left a bread crumb about the venue in her last message."),
]

# coinages built from lexicon constituents (compounds) or affixes (blends),
# plus opaque inventions
HUMAN_COINAGE = [
    ("zingfoot", "a sudden feeling of joy in the legs.",
     "The music made her feel zingfoot and she danced."),
    ("moonbread", "food hoarded for a late-night snack.",
     "He keeps a drawer of moonbread next to the bed."),
    ("stormwhisk", "a burst of frantic cleaning before guests arrive.",
     "We did a stormwhisk ten minutes before they knocked."),
    ("footlantern", "a person who guides friends home after dark.",
     "Sam is our footlantern after every late shift."),
    ("jamwhisk", "chaotically combining two unrelated tasks.",
     "His cooking-while-emailing jamwhisk ended badly."),
    ("snurfle", "to search for something in a distracted manner.",
     "I snurfled the whole flat looking for my keys."),
    ("wumwum", "a noncommittal phrase used to dodge plans.",
     "Every invite gets a wumwum out of him."),
    ("glizzle", "to coat a dull day with small amusements.",
     "She glizzled the commute with silly podcasts."),
    ("drumlight", "the burst of confidence before going on stage.",
     "A little drumlight hit me as the curtain rose."),
    ("starwash", "the feeling after stargazing that chores are trivial.",
     "Post-hike starwash made the dishes wait until morning."),
    ("breadlight", "the glow of a bakery window at dawn.",
     "We walked home through the breadlight on Fifth Street."),
    ("stonewhisper", "a barely audible complaint.",
     "He agreed, but with a stonewhisper about the schedule."),
    ("milkstorm", "a chaotic breakfast with small children.",
     "Tuesday's milkstorm left cereal on the ceiling."),
    ("fireball run", "a reckless last-minute dash.",
     "Catching that train was a proper fireball run."),
    ("grumblick", "a person who complains while still helping.",
     "Our resident grumblick fixed the printer anyway."),
]

MODEL_GPT = [
    ("U-F", "fluffle", "a cozy gathering of soft comfortable things.",
     "The fluffle of blankets on the sofa was irresistible."),
    ("U-F", "doomscroll", "endlessly reading bad news on a phone.",
     "I lost an hour to doomscroll before breakfast."),
    ("U-F", "jugglework", "the balancing of too many tasks at once.",
     "Campaign season is nonstop jugglework."),
    ("U-F", "techtime", "scheduled screen time for relaxing.",
     "We booked some techtime to binge the documentary."),
    ("U-F", "cringeflash", "a rush of secondhand embarrassment from a memory.",
     "That song gives me a cringeflash of my wedding toast."),
    ("U-R", "backwash", "the lingering aftermath of an event.",
     "The festival backwash kept the town buzzing for days."),
    ("U-R", "cinderblock", "unshakeable determination.",
     "Her cinderblock resolve carried the team through."),
    ("U-R", "switchblade", "a quick cutting retort.",
     "Mike's switchblade ended the argument instantly."),
    ("U-R", "lanternfish", "a person most active late at night.",
     "Kyle the lanternfish answers emails at 3 a.m."),
    ("U-R", "bathrobe", "a state of total relaxation.",
     "The cabin weekend was pure bathrobe."),
    ("U-R", "bucket", "a person who absorbs everyone's complaints.",
     "I was the office bucket all afternoon."),
    ("U-C", "blizzleplunk", "a sudden change of direction on a walk.",
     "Our stroll turned into a blizzleplunk when the rain hit."),
    ("U-C", "splogboop", "an unexpected delightful surprise.",
     "Finding cash in an old coat is a classic splogboop."),
    ("U-C", "blizzlefrost", "a chill of excitement.",
     "The first snow gave me such a blizzlefrost."),
    ("U-C", "trungleflap", "to tumble haphazardly.",
     "Careful not to trungleflap over the cables."),
    ("U-C", "zorkmingle", "a quirky social gathering.",
     "Friday's zorkmingle had a soup-tasting corner."),
    ("C-F", "scoot", "a casual way to announce one's departure.",
     "It's late, time for me to scoot."),
    ("C-F", "nightwhisk", "to slip away from a party unnoticed.",
     "They nightwhisked before the speeches started."),
    ("C-R", "hubcap", "a partner who keeps everyday life running smoothly.",
     "She's my hubcap, nothing falls apart on her watch."),
    ("C-R", "memory jogger", "a thing that stirs old recollections.",
     "That photo was a real memory jogger."),
    ("C-R", "stepladder", "an unexpected boost or assistance.",
     "The mentorship was a stepladder into the industry."),
    ("C-C", "zucchinizip", "a charmingly absurd exaggeration.",
     "His fishing story was a total zucchinizip."),
    ("C-C", "baebs", "an endearing shortened form of babe.",
     "Morning, baebs, coffee's ready."),
    ("C-C", "glowmilk", "flattery offered before a favour is asked.",
     "He poured the glowmilk before borrowing my car."),
    ("C-C", "frostquill", "a goosebump-raising piece of writing.",
     "Her closing paragraph is pure frostquill."),
    ("U-F", "plotmilk", "comforting predictable television.",
     "Sunday evenings are strictly for plotmilk."),
    ("U-R", "anchor", "a person who calms group chats.",
     "Priya is the anchor whenever the thread catches fire."),
    ("U-R", "harbor", "a friend whose home is always open.",
     "Nico's flat is the harbor for half the neighbourhood."),
    ("U-C", "vexelsprig", "a minor annoyance that ruins focus.",
     "A dripping tap is the classic vexelsprig."),
    ("U-C", "morfidoodle", "an absentminded drawing made during calls.",
     "My notebook margins are full of morfidoodles, morfidoodle after morfidoodle."),
    ("C-F", "zip off", "to leave quickly and quietly.",
     "Let's zip off before the encore crowds."),
    ("C-R", "ladder", "a person who helps others advance.",
     "Be a ladder, not a gate, the keynote said."),
    ("C-R", "window", "a brief chance to act.",
     "We had a window and we took it."),
    ("C-C", "snoozelump", "a person impossible to wake gently.",
     "The snoozelump slept through three alarms."),
    ("C-C", "wintergust", "a sudden urge to reorganize everything.",
     "A wintergust hit and the closets never recovered."),
]

MODEL_LLAMA = [
    ("U-F", "snackverse", "the entire landscape of snacks in a home.",
     "Our snackverse is down to crackers and regret."),
    ("U-F", "napfuel", "a light meal eaten to justify a nap.",
     "Grilled cheese is premium napfuel."),
    ("U-R", "meatloaf", "a solid but uninspired piece of work.",
     "The quarterly report was a real meatloaf."),
    ("U-R", "flashdrive", "to abruptly change topics mid-conversation.",
     "She flashdrived from taxes to tide pools in one breath."),
    ("U-R", "scatterbrain", "a lovable but disorganized friend.",
     "Our scatterbrain forgot the tickets again."),
    ("U-C", "flimpflarble", "elegant yet slightly comical coordination.",
     "The ice-dancing routine was pure flimpflarble."),
    ("U-C", "quarkflunk", "an inexplicable all-day mood.",
     "Woke up with a quarkflunk I couldn't shake."),
    ("U-C", "sploodlekabob", "a delightful combination of foods.",
     "The potluck produced one glorious sploodlekabob."),
    ("C-F", "sloshed", "extremely drunk.",
     "He was too sloshed to find his own front door."),
    ("C-F", "you bunch", "a fond collective address for friends.",
     "Ready for the quiz, you bunch?"),
    ("C-R", "engine", "the organizing friend in a group.",
     "Every trip needs an engine like Dana."),
    ("C-C", "grovelnug", "a small peace offering after an argument.",
     "He arrived with pastries as a grovelnug."),
    ("U-F", "crumbtrail", "the snack debris marking where someone sat.",
     "Judging by the crumbtrail, Leo took the window seat."),
    ("U-R", "glacier", "a person who replies to messages weeks late.",
     "Don't wait on Theo, he's a glacier."),
    ("U-C", "brumblewick", "the last working lightbulb in a house.",
     "We read by the brumblewick until the shops opened."),
    ("C-R", "drum", "a persistent reminder one cannot ignore.",
     "The deadline is a drum at the back of my head."),
    ("C-C", "thrumbleton", "an overly elaborate household gadget.",
     "The avocado slicer is peak thrumbleton."),
]


def build_corpus_records():
    rows = []

    def add(term, definition, context, source, condition=None):
        rows.append({
            "term": term,
            "definition": definition,
            "contexts": [context],
            "source": source,
            "condition": condition,
        })

    for term, definition, context in HUMAN_REUSE + HUMAN_MULTIWORD + HUMAN_COINAGE:
        add(term, definition, context, "human")
    for condition, term, definition, context in MODEL_GPT:
        add(term, definition, context, "model:gpt-4o", condition)
    for condition, term, definition, context in MODEL_LLAMA:
        add(term, definition, context, "model:llama-3-8b", condition)
    if len(rows) != 100:
        raise SystemExit(f"corpus fixture has {len(rows)} rows, want 100")
    return rows


# ---------------------------------------------------------------------------
# replay transcript for the uncontrolled campaign


def generation_payload(*triples):
    words, defs, ctxs = zip(*triples)
    return json.dumps({
        "word": list(words),
        "definition": list(defs),
        "usage_context": [[c] for c in ctxs],
    })


REPLAY_ROUNDS = [
    generation_payload(
        ("cuckoo", "a wildly ambitious plan", "Quitting to farm snails? That's cuckoo."),
        ("splogboop", "a delightful surprise", "Finding that note was a total splogboop."),
        ("ball", "a wildly fun party", "Last night was an absolute ball."),
        ("cuckoo", "a wildly ambitious plan", "Another cuckoo from the ideas board."),
    ),
    "Sorry, I can't produce JSON right now.",
    generation_payload(
        ("cuckoo", "someone obsessed with antique clocks", "My uncle is a true cuckoo."),
        ("glorpzig", "a tangled cable situation", "The desk is one big glorpzig."),
        ("ball", "a wildly fun party", "What a ball that was."),
        ("bottle", "hidden courage under pressure", "She found her bottle and spoke up."),
    ),
]


class _ScriptedClient:
    model = "fixture-model"

    def __init__(self, responses):
        self.responses = list(responses)
        self.calls = 0

    def complete(self, prompt, temperature, top_p):
        raw = self.responses[self.calls]
        self.calls += 1
        return raw


def build_replay_transcript(lexicon_path, out_path):
    lexicon = read_lexicon(str(lexicon_path))
    if os.path.exists(out_path):
        os.remove(out_path)
    client = TranscriptRecorder(_ScriptedClient(REPLAY_ROUNDS), str(out_path))
    job = GenerationJob(mode="reuse", n=4, per_round=4)
    result = generate_uncontrolled(job, client, lexicon, HashEmbedder(dim=256, seed=0))
    trace = {
        "accepted_terms": [u.term for u in result.usages],
        "rounds": result.rounds,
        "rejections": dict(result.rejections),
        "parse_failures": result.parse_failures,
    }
    print("replay trace:", json.dumps(trace, indent=2))
    return trace


def main():
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    TEST_DATA_DIR.mkdir(parents=True, exist_ok=True)

    lexicon_path = FIXTURE_DIR / "fixture_lexicon.jsonl"
    with open(lexicon_path, "w", encoding="utf-8") as fh:
        for rec in build_lexicon_records():
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {lexicon_path}")

    corpus_path = FIXTURE_DIR / "fixture_corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for rec in build_corpus_records():
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {corpus_path}")

    transcript_path = TEST_DATA_DIR / "uncontrolled_replay.jsonl"
    build_replay_transcript(lexicon_path, transcript_path)
    print(f"wrote {transcript_path}")


if __name__ == "__main__":
    main()
