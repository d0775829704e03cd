#pragma once

// Default verb taxonomy and part-of-speech lexicon, embedded so the library
// works without data files. The copies under data/ hold identical text.

namespace testdep::builtin {

inline constexpr const char* kTaxonomy = R"RAW(# Verb taxonomy. Lines are "child parent"; "-" marks the root.
# Two branches split verbs that observe state from verbs that mutate it.
act -
transfer-info act
cause-change act
read transfer-info
search transfer-info
find transfer-info
check transfer-info
verify transfer-info
login transfer-info
logout transfer-info
view transfer-info
browse transfer-info
list transfer-info
open transfer-info
inspect transfer-info
load transfer-info
fetch transfer-info
get transfer-info
query transfer-info
visit transfer-info
show transfer-info
select transfer-info
count transfer-info
navigate transfer-info
create cause-change
add cause-change
insert cause-change
enrol cause-change
enroll cause-change
update cause-change
modify cause-change
edit cause-change
delete cause-change
remove cause-change
drop cause-change
register cause-change
save cause-change
write cause-change
upload cause-change
submit cause-change
post cause-change
change cause-change
set cause-change
assign cause-change
clear cause-change
reset cause-change
rename cause-change
move cause-change
copy cause-change
import cause-change
publish cause-change
archive cause-change
group read read
group write create update delete
)RAW";

inline constexpr const char* kLexicon = R"RAW(# Part-of-speech lexicon for identifier tokens, one "token POS" per line.
# Unlisted tokens default to NOUN.
add VERB
archive VERB
assign VERB
browse VERB
change VERB
check VERB
clear VERB
copy VERB
count VERB
create VERB
delete VERB
drop VERB
edit VERB
enrol VERB
enroll VERB
fetch VERB
find VERB
get VERB
import VERB
insert VERB
inspect VERB
list VERB
load VERB
login VERB
logout VERB
modify VERB
move VERB
navigate VERB
open VERB
post VERB
publish VERB
query VERB
read VERB
register VERB
remove VERB
rename VERB
reset VERB
save VERB
search VERB
select VERB
set VERB
show VERB
submit VERB
update VERB
upload VERB
verify VERB
view VERB
visit VERB
write VERB
account NOUN
admin NOUN
cart NOUN
category NOUN
comment NOUN
course NOUN
customer NOUN
dashboard NOUN
entry NOUN
field NOUN
file NOUN
firstname NOUN
form NOUN
group NOUN
invoice NOUN
item NOUN
name NOUN
order NOUN
page NOUN
password NOUN
product NOUN
profile NOUN
record NOUN
report NOUN
role NOUN
session NOUN
student NOUN
tag NOUN
teacher NOUN
user NOUN
username NOUN
empty ADJ
invalid ADJ
new ADJ
old ADJ
valid ADJ
again ADV
twice ADV
)RAW";

}  // namespace testdep::builtin
