//! Hand-built annotation lines shared by unit tests.

/// "Please help me out by sending $500." with the two SRL frames of the
/// worked example (help: ARG1 me, ARGM by sending $500; sending: ARG1 $500.).
pub(crate) const HELP_SENTENCE: &str = r#"{"segment":0,"tokens":[{"i":0,"text":"Please","lemma":"please","pos":"UH"},{"i":1,"text":"help","lemma":"help","pos":"VB"},{"i":2,"text":"me","lemma":"I","pos":"PRP"},{"i":3,"text":"out","lemma":"out","pos":"RP"},{"i":4,"text":"by","lemma":"by","pos":"IN"},{"i":5,"text":"sending","lemma":"send","pos":"VBG"},{"i":6,"text":"$","lemma":"$","pos":"$"},{"i":7,"text":"500","lemma":"500","pos":"CD"},{"i":8,"text":".","lemma":".","pos":"."}],"deps":[{"head":1,"dep":0,"rel":"discourse"},{"head":-1,"dep":1,"rel":"root"},{"head":1,"dep":2,"rel":"obj"},{"head":1,"dep":3,"rel":"compound:prt"},{"head":5,"dep":4,"rel":"mark"},{"head":1,"dep":5,"rel":"advcl"},{"head":5,"dep":6,"rel":"obj"},{"head":6,"dep":7,"rel":"nummod"},{"head":1,"dep":8,"rel":"punct"}],"constituency":["ROOT",["S",["INTJ",0],["VP",1,["NP",2],["PRT",3],["PP",4,["S",["VP",5,["NP",6,7]]]]],8]],"srl":[{"pred":1,"args":[{"role":"ARG1","span":[2,2]},{"role":"ARGM-MNR","span":[4,7]}]},{"pred":5,"args":[{"role":"ARG1","span":[6,8]}]}]}"#;

/// "We sent you this email because you're signing up for a new account." (no SRL).
pub(crate) const SENT_SIGNING: &str = r#"{"segment":0,"tokens":[{"i":0,"text":"We","lemma":"we","pos":"PRP"},{"i":1,"text":"sent","lemma":"send","pos":"VBD"},{"i":2,"text":"you","lemma":"you","pos":"PRP"},{"i":3,"text":"this","lemma":"this","pos":"DT"},{"i":4,"text":"email","lemma":"email","pos":"NN"},{"i":5,"text":"because","lemma":"because","pos":"IN"},{"i":6,"text":"you","lemma":"you","pos":"PRP"},{"i":7,"text":"'re","lemma":"be","pos":"VBP"},{"i":8,"text":"signing","lemma":"sign","pos":"VBG"},{"i":9,"text":"up","lemma":"up","pos":"RP"},{"i":10,"text":"for","lemma":"for","pos":"IN"},{"i":11,"text":"a","lemma":"a","pos":"DT"},{"i":12,"text":"new","lemma":"new","pos":"JJ"},{"i":13,"text":"account","lemma":"account","pos":"NN"},{"i":14,"text":".","lemma":".","pos":"."}],"deps":[{"head":1,"dep":0,"rel":"nsubj"},{"head":-1,"dep":1,"rel":"root"},{"head":1,"dep":2,"rel":"iobj"},{"head":4,"dep":3,"rel":"det"},{"head":1,"dep":4,"rel":"obj"},{"head":8,"dep":5,"rel":"mark"},{"head":8,"dep":6,"rel":"nsubj"},{"head":8,"dep":7,"rel":"aux"},{"head":1,"dep":8,"rel":"advcl"},{"head":8,"dep":9,"rel":"compound:prt"},{"head":13,"dep":10,"rel":"case"},{"head":13,"dep":11,"rel":"det"},{"head":13,"dep":12,"rel":"amod"},{"head":8,"dep":13,"rel":"obl"},{"head":1,"dep":14,"rel":"punct"}],"constituency":["ROOT",["S",["VP",0,1,2,["NP",3,4],["VP",5,6,["VP",7],8,9,["NP",10,11,12,13]],14]]],"srl":[]}"#;

/// "Hello."
pub(crate) const HELLO: &str = r#"{"segment":0,"tokens":[{"i":0,"text":"Hello","lemma":"hello","pos":"UH"},{"i":1,"text":".","lemma":".","pos":"."}],"deps":[{"head":-1,"dep":0,"rel":"root"},{"head":0,"dep":1,"rel":"punct"}],"constituency":["ROOT",["S",["INTJ",0,1]]],"srl":[]}"#;

/// "Send the money to Bob." with dependencies but no SRL frames.
pub(crate) const SEND_MONEY: &str = r#"{"segment":0,"tokens":[{"i":0,"text":"Send","lemma":"send","pos":"VB"},{"i":1,"text":"the","lemma":"the","pos":"DT"},{"i":2,"text":"money","lemma":"money","pos":"NN"},{"i":3,"text":"to","lemma":"to","pos":"IN"},{"i":4,"text":"Bob","lemma":"Bob","pos":"NNP"},{"i":5,"text":".","lemma":".","pos":"."}],"deps":[{"head":-1,"dep":0,"rel":"root"},{"head":2,"dep":1,"rel":"det"},{"head":0,"dep":2,"rel":"obj"},{"head":4,"dep":3,"rel":"case"},{"head":0,"dep":4,"rel":"obl"},{"head":0,"dep":5,"rel":"punct"}],"constituency":["ROOT",["S",["VP",0,["NP",1,2],["NP",3,4],5]]],"srl":[]}"#;

/// "Click the link" with a constituency tree and no dependency parse.
pub(crate) const CLICK_NO_DEPS: &str = r#"{"segment":1,"tokens":[{"i":0,"text":"Click","lemma":"click","pos":"VB"},{"i":1,"text":"the","lemma":"the","pos":"DT"},{"i":2,"text":"link","lemma":"link","pos":"NN"}],"constituency":["ROOT",["S",["VP",0,["NP",1,2]]]]}"#;
