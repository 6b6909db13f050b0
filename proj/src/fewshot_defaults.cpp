#include <map>
#include <vector>

#include "sqkit/prompt.hpp"

namespace sqkit {

namespace {

// Hand-written defaults, five per role with mixed answers. Every example
// carries a reasoning paragraph so chain-of-thought mode has material to
// show. All sites, posts and handles are fictional.
std::map<Role, std::vector<FewshotExample>> build_defaults() {
  std::map<Role, std::vector<FewshotExample>> out;

  out[Role::Expert] = {
      {"https://www.harborhealthjournal.com/heart-disease-prevention-guide",
       "https://twitter.com/drlenacardio/status/882211",
       "drlenacardio",
       "Preventing heart disease starts long before symptoms appear. A new review of 42 "
       "studies found that moderate daily exercise lowered cardiovascular risk across every "
       "age group, and clinicians are rethinking their advice accordingly.",
       "The primary focus of the snippet is heart disease prevention research. The post is "
       "from a cardiologist giving a professional reading of the evidence. So the embedded "
       "post is from someone who has recognized expertise in the main topic of the webpage.",
       true},
      {"https://www.clearorbitdaily.com/telescope-images-explained",
       "https://twitter.com/stargazer_tom/status/430988",
       "stargazer_tom",
       "The newest deep-field images reveal galaxies as they looked twelve billion years "
       "ago. Astronomers spent months calibrating the instrument before releasing the data.",
       "The primary focus of the snippet is newly released telescope imagery. The post is "
       "from a hobbyist reacting with excitement and shows no professional background in "
       "astronomy. So the embedded post is not from someone who has recognized expertise in "
       "the main topic of the webpage.",
       false},
      {"https://www.northfieldscience.net/volcano-monitoring-advances",
       "https://twitter.com/ashplumesarah/status/771205",
       "ashplumesarah",
       "Sensor networks on the caldera now report ground deformation in near real time, "
       "giving towns in the valley hours of extra warning before an eruption.",
       "The primary focus of the snippet is volcano monitoring technology. The post is from "
       "a volcanologist who runs one of the sensor networks described. So the embedded post "
       "is from someone who has recognized expertise in the main topic of the webpage.",
       true},
      {"https://www.ledgerandline.com/small-business-tax-changes",
       "https://twitter.com/couponkingdeals/status/118766",
       "couponkingdeals",
       "The new filing rules change how small businesses deduct equipment purchases, and "
       "accountants say the transition year will be the hardest part.",
       "The primary focus of the snippet is small-business tax rules. The post is from a "
       "deals account with no accounting or legal credentials. So the embedded post is not "
       "from someone who has recognized expertise in the main topic of the webpage.",
       false},
      {"https://www.bramblekitchen.com/perfect-sourdough-crust",
       "https://www.instagram.com/p/Cx91LwQr2/",
       "chefmarcoforno",
       "Getting a crackling sourdough crust comes down to steam in the first twenty minutes "
       "of the bake. Professional ovens inject it; home bakers have to improvise.",
       "The primary focus of the snippet is sourdough baking technique. The post is from a "
       "professional baker demonstrating the steam method in a bakery kitchen. So the "
       "embedded post is from someone who has recognized expertise in the main topic of the "
       "webpage.",
       true},
  };

  out[Role::Influencer] = {
      {"https://www.glowreviewhub.com/winter-skincare-routines",
       "https://www.instagram.com/p/Bw22MnearX/",
       "dewyskinbymia",
       "Cold air and indoor heating strip moisture fast, so winter routines lean on heavier "
       "creams and overnight masks. We rounded up the routines creators swear by.",
       "The primary focus of the snippet is winter skincare routines. The post is from a "
       "creator with a large audience who reviews skincare for a living and is cited as one "
       "of the roundup's voices. So the embedded post is from someone who is a popular voice "
       "on the main topic of the webpage.",
       true},
      {"https://www.coastalstormwatch.com/harbor-flooding-report",
       "https://twitter.com/pier9_resident/status/995102",
       "pier9_resident",
       "High tide pushed water over the seawall for the third night in a row, and the city "
       "says pumps will run through the weekend.",
       "The primary focus of the snippet is local flooding. The post is from a resident "
       "describing their street, not from an account people follow for flood coverage. So "
       "the embedded post is not from someone who is a popular voice on the main topic of "
       "the webpage.",
       false},
      {"https://www.pressplayarena.com/spring-invitational-preview",
       "https://twitter.com/zelda_speedqueen/status/204187",
       "zelda_speedqueen",
       "The spring invitational brings sixteen qualified teams to the arena, and streamers "
       "are already drafting fantasy rosters for the opening bracket.",
       "The primary focus of the snippet is an esports tournament. The post is from a "
       "streamer with a big following whose bracket predictions the article highlights. So "
       "the embedded post is from someone who is a popular voice on the main topic of the "
       "webpage.",
       true},
      {"https://www.quietledger.com/index-fund-basics",
       "https://twitter.com/savingsam_123/status/66310",
       "savingsam_123",
       "Index funds spread risk across the whole market instead of betting on single "
       "stocks, which is why advisers recommend them as a first investment.",
       "The primary focus of the snippet is beginner investing. The post is from a small "
       "personal account sharing a first-time purchase, not a widely followed finance "
       "voice. So the embedded post is not from someone who is a popular voice on the main "
       "topic of the webpage.",
       false},
      {"https://www.homeformhq.com/no-equipment-workouts",
       "https://www.tiktok.com/@coachdelmarfit/video/7201",
       "coachdelmarfit",
       "No-equipment training took off when gyms closed and never slowed down. These "
       "routines need nothing but a mat and twenty minutes.",
       "The primary focus of the snippet is home workout routines. The post is from a "
       "fitness creator whose routine videos draw millions of views and anchor the "
       "article's list. So the embedded post is from someone who is a popular voice on the "
       "main topic of the webpage.",
       true},
  };

  out[Role::Authority] = {
      {"https://www.harborcitynews.com/subway-line-delays",
       "https://twitter.com/metroharbortransit/status/550917",
       "metroharbortransit",
       "Signal failures on the east line stretched the morning commute past two hours, and "
       "riders want to know when normal service resumes.",
       "The primary focus of the snippet is subway service disruptions. The post is from "
       "the transit agency that operates the line. So the embedded post is from someone "
       "who is a recognized public figure or institution relevant to the webpage content.",
       true},
      {"https://www.ballotroomdaily.com/county-turnout-analysis",
       "https://twitter.com/frogmemes_daily/status/81234",
       "frogmemes_daily",
       "Early voting numbers suggest turnout will beat the last midterm, with the largest "
       "gains among first-time voters.",
       "The primary focus of the snippet is election turnout. The post is from an anonymous "
       "meme account with no official standing. So the embedded post is not from someone "
       "who is a recognized public figure or institution relevant to the webpage content.",
       false},
      {"https://www.coastalstormwatch.com/hurricane-tracking-center",
       "https://twitter.com/coastalweatherservice/status/993411",
       "coastalweatherservice",
       "The storm is expected to strengthen overnight before turning north. Forecasters "
       "urge residents along the sound to finish preparations by Friday evening.",
       "The primary focus of the snippet is hurricane forecasting. The post is from the "
       "regional weather service issuing the forecast. So the embedded post is from someone "
       "who is a recognized public figure or institution relevant to the webpage content.",
       true},
      {"https://www.gridironledger.com/trade-deadline-rumors",
       "https://twitter.com/benchwarmerspod/status/377190",
       "benchwarmerspod",
       "Front offices around the league are quiet, but scouts keep showing up at practices "
       "ahead of the trade deadline.",
       "The primary focus of the snippet is football trade rumors. The post is from a fan "
       "podcast speculating, not a team, league office or public figure. So the embedded "
       "post is not from someone who is a recognized public figure or institution relevant "
       "to the webpage content.",
       false},
      {"https://www.kentbrookgazette.com/city-budget-vote",
       "https://twitter.com/mayorofkentbrook/status/472215",
       "mayorofkentbrook",
       "The council passed the budget eight to three after a marathon session, keeping the "
       "library expansion and delaying the road bond a year.",
       "The primary focus of the snippet is the city budget vote. The post is from the "
       "mayor who signed the budget. So the embedded post is from someone who is a "
       "recognized public figure or institution relevant to the webpage content.",
       true},
  };

  out[Role::Subject] = {
      {"https://www.chordlinemag.com/novalie-second-album-review",
       "https://twitter.com/novaliemusic/status/662001",
       "novaliemusic",
       "Novalie's second record trades the bedroom-pop haze of her debut for brass and big "
       "room choruses, and the gamble mostly pays off.",
       "The primary focus of the snippet is Novalie's new album. The post is from Novalie "
       "herself, the artist the review is about. So the embedded post is from someone who "
       "is the primary entity being discussed in the webpage.",
       true},
      {"https://www.coastalstormwatch.com/seawall-overtopping-photos",
       "https://twitter.com/walkerbythebay/status/88452",
       "walkerbythebay",
       "Storm surge overtopped the seawall at three points on Sunday, flooding the "
       "promenade and closing the coastal road.",
       "The primary focus of the snippet is the seawall flooding. The post is from a "
       "passerby who photographed the scene, not the person or organization the page is "
       "about. So the embedded post is not from someone who is the primary entity being "
       "discussed in the webpage.",
       false},
      {"https://www.techgearledger.com/volteon-scooter-recall",
       "https://twitter.com/volteonrides/status/190553",
       "volteonrides",
       "Volteon is recalling its flagship scooter after reports of battery housings "
       "cracking, and says replacements ship next month.",
       "The primary focus of the snippet is Volteon's scooter recall. The post is from "
       "Volteon, the company conducting the recall. So the embedded post is from someone "
       "who is the primary entity being discussed in the webpage.",
       true},
      {"https://www.gridironledger.com/new-stadium-financing",
       "https://twitter.com/section212lifer/status/700233",
       "section212lifer",
       "The stadium deal leans on ticket surcharges rather than new taxes, a structure the "
       "club says keeps public money out of the project.",
       "The primary focus of the snippet is stadium financing. The post is from a season "
       "ticket holder reacting to the plan, not the club or authority behind it. So the "
       "embedded post is not from someone who is the primary entity being discussed in the "
       "webpage.",
       false},
      {"https://www.checkmateweekly.com/prodigy-rising-marisol-vega",
       "https://www.tiktok.com/@marisolplayschess/video/8816",
       "marisolplayschess",
       "At fourteen, Marisol Vega has already beaten two grandmasters in classical play, "
       "and her training clips have made opening theory unexpectedly popular.",
       "The primary focus of the snippet is Marisol Vega's chess career. The post is from "
       "Marisol's own account, the prodigy the profile covers. So the embedded post is from "
       "someone who is the primary entity being discussed in the webpage.",
       true},
  };

  out[Role::Witness] = {
      {"https://www.pinecrestdispatch.com/ridge-fire-evacuations",
       "https://twitter.com/juniper_hollow/status/441876",
       "juniper_hollow",
       "Evacuation orders expanded to the north ridge overnight as the fire jumped the "
       "creek, and shelters in town reached capacity by morning.",
       "The primary focus of the snippet is the ridge fire evacuations. The post is from a "
       "resident who photographed the fire line from their street while evacuating. So the "
       "embedded post is from someone who witnessed or directly participated in an event "
       "discussed in the webpage.",
       true},
      {"https://www.pinecrestdispatch.com/ridge-fire-cause-investigation",
       "https://twitter.com/wildfirewire/status/910442",
       "wildfirewire",
       "Investigators traced the ridge fire to a downed power line, according to a "
       "preliminary report released Tuesday.",
       "The primary focus of the snippet is the fire investigation. The post is from a news "
       "aggregation account resharing the report from elsewhere. So the embedded post is "
       "not from someone who witnessed or directly participated in an event discussed in "
       "the webpage.",
       false},
      {"https://www.harborcitynews.com/bay-marathon-recap",
       "https://www.instagram.com/p/Ct55RunnerQ/",
       "ellie_runs_far",
       "Six thousand runners crossed the bay bridge at sunrise, and the final stretch along "
       "the waterfront turned into a wall of noise.",
       "The primary focus of the snippet is the bay marathon. The post is from a runner "
       "sharing mile-by-mile photos from inside the race. So the embedded post is from "
       "someone who witnessed or directly participated in an event discussed in the "
       "webpage.",
       true},
      {"https://www.chordlinemag.com/midnight-pier-festival-review",
       "https://twitter.com/soundtheorist/status/384726",
       "soundtheorist",
       "The festival's closing set ran ninety minutes over, and nobody at the pier seemed "
       "to mind.",
       "The primary focus of the snippet is the festival's closing night. The post is from "
       "a critic analyzing the setlist from the published recordings rather than from the "
       "pier. So the embedded post is not from someone who witnessed or directly "
       "participated in an event discussed in the webpage.",
       false},
      {"https://www.kentbrookgazette.com/train-derailment-cleanup",
       "https://www.tiktok.com/@mile17farmstand/video/5529",
       "mile17farmstand",
       "Crews spent the weekend righting freight cars that left the track outside "
       "Kentbrook, and the crossing reopened Monday.",
       "The primary focus of the snippet is the train derailment. The post is video of the "
       "derailed cars filmed by the farm stand owner across the road as it happened. So the "
       "embedded post is from someone who witnessed or directly participated in an event "
       "discussed in the webpage.",
       true},
  };

  out[Role::Commenter] = {
      {"https://www.gridironledger.com/steelers-quarterback-battle",
       "https://twitter.com/steelcurtainfan86/status/661472",
       "steelcurtainfan86",
       "The Pittsburgh Steelers enter camp with an open quarterback competition, and the "
       "coaching staff says every preseason snap will count toward the final decision.",
       "The primary focus of the snippet is the Pittsburgh Steelers football team. The post "
       "is from a fan of the team commenting on one of the players. So the embedded post is "
       "from someone commenting on the topic of the webpage.",
       true},
      {"https://www.reelnotesreview.com/starlight-harbor-film-review",
       "https://twitter.com/starlightharbormov/status/235871",
       "starlightharbormov",
       "Starlight Harbor wants to be both a heist caper and a family drama, and its best "
       "scenes are the ones that stop trying to be either.",
       "The primary focus of the snippet is a review of the film Starlight Harbor. The post "
       "is the studio's own promotional account sharing the trailer, not an outside opinion "
       "on the film. So the embedded post is not from someone commenting on the main topic "
       "of the webpage.",
       false},
      {"https://www.kentbrookgazette.com/bike-lane-expansion-debate",
       "https://twitter.com/mapleave_neighbor/status/518804",
       "mapleave_neighbor",
       "The council's bike lane expansion would remove a parking lane on Maple Avenue, and "
       "Monday's public comment session ran three hours.",
       "The primary focus of the snippet is the bike lane expansion debate. The post is "
       "from a resident giving their opinion on the plan. So the embedded post is from "
       "someone commenting on the main topic of the webpage.",
       true},
      {"https://www.techgearledger.com/foldable-phone-durability",
       "https://www.instagram.com/p/Cb83BeachZ/",
       "sunnydaytravels",
       "Hinge fatigue remains the weak point of foldable phones, and lab results show wide "
       "gaps between brands.",
       "The primary focus of the snippet is foldable phone durability. The post is a "
       "vacation photo unrelated to phones or hardware. So the embedded post is not from "
       "someone commenting on the main topic of the webpage.",
       false},
      {"https://www.quietledger.com/four-day-week-pilot-results",
       "https://www.tiktok.com/@spreadsheet_sonya/video/3310",
       "spreadsheet_sonya",
       "Companies in the four-day week pilot reported flat output and sharply lower "
       "turnover, though managers split on whether meetings got better.",
       "The primary focus of the snippet is the four-day work week pilot. The post is from "
       "an office worker giving their take on the results. So the embedded post is from "
       "someone commenting on the main topic of the webpage.",
       true},
  };

  out[Role::Marketer] = {
      {"https://www.dealharborfinds.com/aurora-headphones-sale",
       "https://twitter.com/basslinebeth/status/627391",
       "basslinebeth",
       "The Aurora X2 headphones are back at their lowest price of the year through "
       "Sunday, and our link below includes the extra warranty.",
       "The primary focus of the snippet is a limited-time sale on Aurora X2 headphones. "
       "The webpage pushes a purchase link for the same headphones the post praises. So the "
       "webpage is marketing or advertising a product mentioned in the embedded post.",
       true},
      {"https://www.techgearledger.com/headphone-market-shakeup",
       "https://twitter.com/audiomarketdesk/status/148830",
       "audiomarketdesk",
       "Three new entrants took a fifth of the headphone market this year, squeezing "
       "legacy brands on both price and battery life.",
       "The primary focus of the snippet is industry analysis of the headphone market. The "
       "webpage reports on market share without selling anything mentioned in the post. So "
       "the webpage is not marketing or advertising a product mentioned in the embedded "
       "post.",
       false},
      {"https://www.driftcloudsleep.com/why-sleepers-switch",
       "https://www.instagram.com/p/Cm41DreamY/",
       "naptime_nadia",
       "Driftcloud sleepers keep telling us the same thing: the first week feels different. "
       "Use code DRIFT10 at checkout for ten percent off your first mattress.",
       "The primary focus of the snippet is promoting Driftcloud mattresses with a discount "
       "code. The embedded post is a customer raving about the same mattress the page "
       "sells. So the webpage is marketing or advertising a product mentioned in the "
       "embedded post.",
       true},
      {"https://www.trailsandtea.com/boot-repair-basics",
       "https://twitter.com/cobbler_crow/status/81112",
       "cobbler_crow",
       "Resoling a worn pair of hiking boots costs a third of replacing them, and most "
       "models from the last decade can take two or three new soles.",
       "The primary focus of the snippet is repairing hiking boots. The webpage gives "
       "repair advice and sells nothing from the post. So the webpage is not marketing or "
       "advertising a product mentioned in the embedded post.",
       false},
      {"https://www.peakformoutfitters.com/summit-jacket-launch",
       "https://www.tiktok.com/@alpine_anna/video/9917",
       "alpine_anna",
       "The new Summit Shell is live in the store today. Watch Anna put the jacket through "
       "a whiteout on the north face, then grab yours before the first run sells out.",
       "The primary focus of the snippet is the launch of the Summit Shell jacket. The "
       "webpage is the outfitter's own store page urging readers to buy the jacket shown "
       "in the post. So the webpage is marketing or advertising a product mentioned in the "
       "embedded post.",
       true},
  };

  out[Role::SelfPromoter] = {
      {"https://www.trailsandtea.com/alpine-lakes-guide",
       "https://twitter.com/trailsandtea/status/515099",
       "trailsandtea",
       "Our alpine lakes guide now covers fourteen routes, with water sources and late-season "
       "snow notes for each one.",
       "The primary focus of the snippet is the site's own hiking guide. The post comes "
       "from the Trails and Tea account, the same blog that published the page. So the "
       "embedded post was created by the same entity who created the webpage.",
       true},
      {"https://www.ballotroomdaily.com/senate-race-profile",
       "https://twitter.com/candidate_hq_22/status/903314",
       "candidate_hq_22",
       "The challenger has closed the polling gap to four points with six weeks left, "
       "running hard on transit and housing.",
       "The primary focus of the snippet is a profile of a senate race. The post is from a "
       "campaign account, while the webpage is a news outlet covering the race. So the "
       "embedded post was not created by the same entity who created the webpage.",
       false},
      {"https://www.harborcitynews.com/ferry-schedule-investigation",
       "https://www.tiktok.com/@harborcitynews/video/4412",
       "harborcitynews",
       "Our investigation found the ferry operator quietly trimmed two dozen sailings from "
       "the printed schedule. Watch the full breakdown.",
       "The primary focus of the snippet is the outlet's ferry investigation. The embedded "
       "video is posted by the outlet's own account on another platform. So the embedded "
       "post was created by the same entity who created the webpage.",
       true},
      {"https://www.chordlinemag.com/novalie-tour-announcement",
       "https://www.instagram.com/p/Cf19TourN/",
       "novaliemusic",
       "Novalie announced a twelve-city tour this morning, with presale codes going out to "
       "mailing list subscribers on Friday.",
       "The primary focus of the snippet is Novalie's tour announcement. The post is from "
       "the artist, but the webpage is a music magazine reporting on her. So the embedded "
       "post was not created by the same entity who created the webpage.",
       false},
      {"https://www.bramblekitchen.com/our-new-cookbook",
       "https://www.instagram.com/p/Ck77BakeB/",
       "bramblekitchen",
       "The Bramble Kitchen cookbook is real, it is printed, and it ships in October. Every "
       "recipe from the crust series made it in.",
       "The primary focus of the snippet is the site's own cookbook launch. The post is "
       "from the Bramble Kitchen account that runs the blog. So the embedded post was "
       "created by the same entity who created the webpage.",
       true},
  };

  return out;
}

}  // namespace

const std::vector<FewshotExample>& default_fewshots(Role role) {
  static const std::map<Role, std::vector<FewshotExample>> defaults = build_defaults();
  return defaults.at(role);
}

}  // namespace sqkit
